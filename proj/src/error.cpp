#include "qpd/error.hpp"

#include <sstream>

namespace qpd {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::domain: return "domain";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::insufficient_irrationality: return "insufficient-irrationality";
    case ErrorKind::rank_deficient: return "rank-deficient";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::few_peaks: return "too-few-peaks";
    case ErrorKind::budget: return "budget";
    case ErrorKind::ingestion: return "ingestion";
    }
    return "unknown";
}

namespace {

std::string irrationality_message(std::int64_t p, std::int64_t q, std::int64_t T) {
    std::ostringstream os;
    os << "insufficient irrationality: omega equals " << p << "/" << q
       << " to working precision, so the " << T + 1 << " rotation points are not distinct";
    return os.str();
}

std::string budget_message(double simplices, double budget) {
    std::ostringstream os;
    os << "simplex budget exceeded: " << simplices << " simplices > budget " << budget;
    return os.str();
}

std::string window_message(std::int64_t t, std::int64_t last) {
    std::ostringstream os;
    os << "window at t=" << t << " exceeds the record; last valid t is " << last;
    return os.str();
}

std::string peaks_message(std::size_t requested, const std::vector<FoundPeak>& found) {
    std::ostringstream os;
    os << "requested " << requested << " peaks, found " << found.size();
    if (!found.empty()) {
        os << ":";
        for (const auto& p : found) os << " (f=" << p.frequency << ", |c|=" << p.magnitude << ")";
    }
    return os.str();
}

}  // namespace

InsufficientIrrationality::InsufficientIrrationality(std::int64_t p, std::int64_t q, std::int64_t T)
    : Error(ErrorKind::insufficient_irrationality, irrationality_message(p, q, T)), p_(p), q_(q) {}

BudgetExceeded::BudgetExceeded(double simplices, double budget)
    : Error(ErrorKind::budget, budget_message(simplices, budget)), simplices_(simplices) {}

WindowOutOfRange::WindowOutOfRange(std::int64_t requested_t, std::int64_t last_valid_t)
    : Error(ErrorKind::out_of_range, window_message(requested_t, last_valid_t)),
      last_valid_(last_valid_t) {}

TooFewPeaks::TooFewPeaks(std::size_t requested, std::vector<FoundPeak> found)
    : Error(ErrorKind::few_peaks, peaks_message(requested, found)), found_(std::move(found)) {}

}  // namespace qpd
