#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpd {

using cplx = std::complex<double>;

struct ExpTerm {
    cplx coeff;
    double freq = 0.0; // cycles per unit time
};

struct ExponentialSum {
    std::vector<ExpTerm> terms;
    // Each term stands for coeff * (e^{2πi f t} + e^{-2πi f t}).
    bool symmetric = false;

    cplx operator()(double t) const;
    // Terms with conjugate frequencies written out when symmetric.
    std::vector<ExpTerm> expanded() const;
    void validate() const;
};

struct SWParams {
    int d = 1;
    double tau = 1.0;
    double step = 1.0;
    std::int64_t T = 0;
};

struct SampledSignal {
    std::vector<cplx> samples; // samples[k] = f(k * step)
    double step = 1.0;
};

// Rows are window positions t = 0..T, columns m = 0..d.
Eigen::MatrixXcd embed(const ExponentialSum& f, const SWParams& p);
Eigen::MatrixXcd embed(const SampledSignal& f, const SWParams& p, bool interpolate = false);

struct SWMatrix {
    Eigen::MatrixXcd A;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double cond_k = 0.0;
    std::vector<std::string> warnings;
};

SWMatrix sw_matrix(const ExponentialSum& f, const SWParams& p);

// Rows v_t = (c̃_j e^{2πi f_j t})_j with c̃_j = sqrt(d+1) c_j, t = 0..T, at unit time steps.
Eigen::MatrixXcd trajectory(const ExponentialSum& f, int d, std::int64_t T);

// Flat torus coordinates (t * f_j mod 1) of the trajectory.
Eigen::MatrixXd flat_coordinates(const ExponentialSum& f, std::int64_t T);

// 1 / (2 (f_max - f_min)): makes two-term A orthogonal.
double default_tau(const ExponentialSum& f);

}  // namespace qpd
