#pragma once

#include <complex>
#include <vector>

#include "pseudoproc/heat_kernel.hpp"
#include "pseudoproc/report.hpp"
#include "pseudoproc/root_system.hpp"

namespace pseudoproc::oracle {

using cplx = std::complex<double>;

// Signed-weight field over a centered uniform grid, evolved by cyclic
// FFT convolution with the one-step kernel p(2^-n; .) h, with the sojourn
// damping e^{-nu 2^-n} applied on the nonnegative cells after each step.
// Rejects odd orders: their kernel has infinite absolute mass and the dyadic
// scheme is ill-founded.
class SignedLattice {
public:
    SignedLattice(const PseudoParams& params, int level, double h, double half_width,
                  int kmax);

    int grid_size() const { return grid_; }
    double h() const { return h_; }
    double dt() const { return dt_; }
    int center() const { return center_; }
    double cell_x(int i) const { return (i - center_) * h_; }

    double kernel_mass() const;      // sum of the step weights
    double kernel_abs_mass() const;  // sum of |step weights|

    // Advances both the damped field and the undamped companion one step.
    // `open_halfline` damps on x > 0 instead of x >= 0.
    void step(double nu, bool open_halfline = false);

    // sum over cells with x >= 0 (< 0) of field(x) e^{i mu x} h.
    cplx damped_moment_pos(double mu) const;
    cplx damped_moment_neg(double mu) const;
    cplx plain_moment_pos(double mu) const;
    cplx plain_moment_neg(double mu) const;

    double damped_abs_mass() const;  // sum |f| h
    double leakage() const { return leakage_; }
    int steps_taken() const { return steps_; }

private:
    PseudoParams params_;
    int level_;
    double dt_, h_, half_width_;
    int grid_, center_, kmax_;
    std::vector<double> weights_;       // step kernel, one entry per cell
    std::vector<double> damped_;        // f: e^{-nu T} weighted density
    std::vector<double> plain_;         // undamped companion
    std::vector<cplx> kernel_fft_;
    int fft_size_ = 0;
    double leakage_ = 0.0;
    double rho_budget_ = 0.0;
    int steps_ = 0;

    void convolve(std::vector<double>& field);
};

struct OracleConfig {
    double h_scale = 0.02;        // h = h_scale * t_max^{1/N}
    double width_scale = 8.0;     // half width = width_scale * t_max^{1/N}
    int kmax = 64;                // 0 = derive from tail_exponent
    double tail_exponent = 30.0;  // keep e^{-lambda k dt} above e^{-tail}
    bool open_halfline = false;
};

struct OracleRun {
    cplx e_series;    // direct Dirichlet-series assembly
    cplx e_product;   // Wiener-Hopf product assembly, truncated consistently
    cplx e_closed;    // closed-form limit value
    double rel_err_series = 0.0;
    double assembly_gap = 0.0;  // |e_series - e_product|
    double leakage = 0.0;
    double abs_mass_peak = 0.0;
    int steps = 0;
    int grid = 0;
};

OracleRun run_lattice(const RootSystem& rs, int level, double lambda, double mu, double nu,
                      const OracleConfig& cfg = {});

// Exhaustive verification of the three walk factorization identities on a
// finite-support step distribution, coefficient-by-coefficient in the
// generating variable up to kmax.
struct WalkStep {
    double value;
    double prob;
};

ValidationReport spitzer_bruteforce(const std::vector<WalkStep>& support, int kmax,
                                    double mu, double nu);

// Power-series exponential of a series with zero constant term.
std::vector<cplx> series_exp(const std::vector<cplx>& a);

}  // namespace pseudoproc::oracle
