#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpd {

enum class ErrorKind {
    validation,
    domain,
    overflow,
    insufficient_irrationality,
    rank_deficient,
    out_of_range,
    few_peaks,
    budget,
    ingestion,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised when ω is a rational p/q to working precision and T reaches q.
class InsufficientIrrationality : public Error {
public:
    InsufficientIrrationality(std::int64_t p, std::int64_t q, std::int64_t T);
    std::int64_t numerator() const noexcept { return p_; }
    std::int64_t denominator() const noexcept { return q_; }

private:
    std::int64_t p_, q_;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(double simplices, double budget);
    double simplices() const noexcept { return simplices_; }

private:
    double simplices_;
};

class WindowOutOfRange : public Error {
public:
    WindowOutOfRange(std::int64_t requested_t, std::int64_t last_valid_t);
    std::int64_t last_valid() const noexcept { return last_valid_; }

private:
    std::int64_t last_valid_;
};

struct FoundPeak {
    double frequency;
    double magnitude;
};

class TooFewPeaks : public Error {
public:
    TooFewPeaks(std::size_t requested, std::vector<FoundPeak> found);
    const std::vector<FoundPeak>& found() const noexcept { return found_; }

private:
    std::vector<FoundPeak> found_;
};

}  // namespace qpd
