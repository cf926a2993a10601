#pragma once

// Unitary propagation of a 2D wavepacket under
//
//   H = p_x^2/2m + (p_y - A_y(x))^2/2m + V(x) - F.r
//
// by Strang splitting. A_y depends only on x, so (p_y - A_y(x))^2 is
// diagonal in the mixed (x, k_y) representation and is applied as an
// exact phase there; p_x^2 is applied in k_x space, V(x) - F_x x is folded
// into the mixed phase (it commutes with it exactly), and a nonzero F_y
// contributes an outer position-space half phase. Every factor is a unit-
// modulus multiplication, so the scheme is exactly unitary and exactly
// time-reversible; the splitting error is 2nd order in dt.
//
// When F_y = 0 and no absorbing mask is active, consecutive steps merge
// their adjacent half phases and the state stays in (x, k_y) between
// observable samples; this is algebraically identical to stepping one by
// one and halves the transform work.
//
// dt accuracy bound (rejected above it, unconditional stability aside):
// the potential phase advance per half step is kept below 0.1 rad,
// dt_max = 0.1 hbar / range(V - F.r). Kinetic phases are exact at any dt.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "gaugesim/errors.hpp"
#include "gaugesim/grid.hpp"
#include "gaugesim/units.hpp"

namespace gaugesim {

struct WavepacketState {
    Grid2D grid;
    std::vector<std::complex<double>> psi; // row-major, x slow
    double t = 0.0;
};

struct EvolutionConfig {
    double dt = 0.25;
    int n_steps = 1000;
    double force_x = 0.0;
    double force_y = 0.0;
    int sample_every = 20;
    bool absorbing = false;     // cos^2 edge mask (norm loss is reported, not hidden)
    double absorb_width = 0.0;  // mask depth from each edge, grid length units
    bool track_energy = true;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<double> mean_x, mean_y;
    std::vector<double> sigma_x, sigma_y;
    std::vector<double> norm;
    std::vector<double> energy; // empty when not tracked
};

// Normalized Gaussian e^{-(x-cx)^2/4sx^2 - (y-cy)^2/4sy^2 + i p.r};
// sx, sy are the standard deviations of |psi|^2. Support (+-5 sigma) must
// stay interior to the grid.
inline WavepacketState init_gaussian_packet(const Grid2D& grid, double cx, double cy, double sx,
                                            double sy, double px, double py) {
    if (!(sx > 0) || !(sy > 0)) throw ConfigError("packet widths must be positive");
    if (cx - 5 * sx < grid.x_min || cx + 5 * sx > grid.x_max || cy - 5 * sy < grid.y_min ||
        cy + 5 * sy > grid.y_max)
        throw ConfigError("packet support (+-5 sigma) touches the grid boundary");
    WavepacketState st;
    st.grid = grid;
    st.psi.resize(grid.size());
    double nrm = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        const double gx = (x - cx) / (2.0 * sx);
        for (int j = 0; j < grid.ny; ++j) {
            const double y = grid.y(j);
            const double gy = (y - cy) / (2.0 * sy);
            const double mag = std::exp(-gx * gx - gy * gy);
            const double ph = px * x + py * y;
            st.psi[grid.idx(i, j)] = std::polar(mag, ph);
            nrm += mag * mag;
        }
    }
    nrm = std::sqrt(nrm * grid.dx * grid.dy);
    for (auto& c : st.psi) c /= nrm;
    return st;
}

class SplitStepEvolver {
public:
    // A_y and V are sampled per x-node (size nx).
    SplitStepEvolver(const Grid2D& grid, const std::vector<double>& a_y,
                     const std::vector<double>& v_of_x, const EvolutionConfig& cfg)
        : grid_(grid), cfg_(cfg), nx_(grid.nx), ny_(grid.ny) {
        if (static_cast<int>(a_y.size()) != nx_ || static_cast<int>(v_of_x.size()) != nx_)
            throw ConfigError("A_y / V sample count must equal nx");
        if (!(cfg.dt > 0)) throw ConfigError("dt must be positive");
        check_dt_bound(v_of_x);

        buf_ = fftw_alloc_complex(grid.size());
        scratch_ = fftw_alloc_complex(grid.size());
        make_plans();
        build_tables(a_y, v_of_x);
        use_chunks_ = (cfg_.force_y == 0.0) && !cfg_.absorbing;
        a_y_ = a_y;
        v_x_ = v_of_x;
    }

    SplitStepEvolver(const SplitStepEvolver&) = delete;
    SplitStepEvolver& operator=(const SplitStepEvolver&) = delete;

    ~SplitStepEvolver() {
        fftw_destroy_plan(py_fwd_);
        fftw_destroy_plan(py_bwd_);
        fftw_destroy_plan(px_fwd_);
        fftw_destroy_plan(px_bwd_);
        fftw_destroy_plan(sy_fwd_);
        fftw_destroy_plan(sx_fwd_);
        fftw_free(buf_);
        fftw_free(scratch_);
    }

    // Advance n_steps, sampling observables every cfg.sample_every steps
    // (plus the initial and final points).
    Trajectory evolve(WavepacketState& state, int n_steps) {
        if (!(state.grid == grid_)) throw ConfigError("state grid does not match evolver grid");
        std::memcpy(buf_, state.psi.data(), sizeof(fftw_complex) * grid_.size());
        Trajectory traj;
        sample(traj, state.t, 0);
        int done = 0;
        const int stride = cfg_.sample_every > 0 ? cfg_.sample_every : n_steps;
        while (done < n_steps) {
            const int n = std::min(stride, n_steps - done);
            if (use_chunks_)
                run_chunk(n);
            else
                for (int s = 0; s < n; ++s) run_single_step();
            done += n;
            sample(traj, state.t + done * cfg_.dt, done);
        }
        std::memcpy(state.psi.data(), buf_, sizeof(fftw_complex) * grid_.size());
        state.t += n_steps * cfg_.dt;
        return traj;
    }

    double norm(const WavepacketState& state) const {
        double acc = 0.0;
        for (const auto& c : state.psi) acc += std::norm(c);
        return acc * grid_.dx * grid_.dy;
    }

    // <H> from the three diagonal representations.
    double energy(const WavepacketState& state) {
        std::memcpy(buf_, state.psi.data(), sizeof(fftw_complex) * grid_.size());
        return energy_of_buf();
    }

private:
    using cplx = std::complex<double>;

    static cplx* c(fftw_complex* p) { return reinterpret_cast<cplx*>(p); }

    void check_dt_bound(const std::vector<double>& v_of_x) const {
        double lo = std::numeric_limits<double>::max();
        double hi = std::numeric_limits<double>::lowest();
        for (int i = 0; i < nx_; ++i) {
            const double w = v_of_x[i] - cfg_.force_x * grid_.x(i);
            lo = std::min(lo, w);
            hi = std::max(hi, w);
        }
        double range = hi - lo;
        if (cfg_.force_y != 0.0)
            range += std::abs(cfg_.force_y) * (grid_.y_max - grid_.y_min);
        if (range == 0.0) return;
        const double dt_max = 0.1 * UnitSystem::hbar / range;
        if (cfg_.dt > dt_max)
            throw ConfigError("dt = " + std::to_string(cfg_.dt) +
                              " exceeds the accuracy bound dt_max = " + std::to_string(dt_max) +
                              " (0.1 hbar / potential range " + std::to_string(range) + ")");
    }

    void make_plans() {
        const int n_y[1] = {ny_};
        const int n_x[1] = {nx_};
        py_fwd_ = fftw_plan_many_dft(1, n_y, nx_, buf_, nullptr, 1, ny_, buf_, nullptr, 1, ny_,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
        py_bwd_ = fftw_plan_many_dft(1, n_y, nx_, buf_, nullptr, 1, ny_, buf_, nullptr, 1, ny_,
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
        px_fwd_ = fftw_plan_many_dft(1, n_x, ny_, buf_, nullptr, ny_, 1, buf_, nullptr, ny_, 1,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
        px_bwd_ = fftw_plan_many_dft(1, n_x, ny_, buf_, nullptr, ny_, 1, buf_, nullptr, ny_, 1,
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
        sy_fwd_ = fftw_plan_many_dft(1, n_y, nx_, scratch_, nullptr, 1, ny_, scratch_, nullptr, 1,
                                     ny_, FFTW_FORWARD, FFTW_ESTIMATE);
        sx_fwd_ = fftw_plan_many_dft(1, n_x, ny_, scratch_, nullptr, ny_, 1, scratch_, nullptr,
                                     ny_, 1, FFTW_FORWARD, FFTW_ESTIMATE);
        if (!py_fwd_ || !py_bwd_ || !px_fwd_ || !px_bwd_ || !sy_fwd_ || !sx_fwd_)
            throw SolverError("FFTW plan creation failed");
    }

    // FFT wavenumber of bin m out of n over period n*d.
    static double fft_k(int m, int n, double d) {
        const int mm = (m <= n / 2) ? m : m - n;
        return 2.0 * std::numbers::pi * mm / (n * d);
    }

    void build_tables(const std::vector<double>& a_y, const std::vector<double>& v_of_x) {
        const double dt = cfg_.dt;
        ky_.resize(ny_);
        for (int j = 0; j < ny_; ++j) ky_[j] = fft_k(j, ny_, grid_.dy);
        kx_.resize(nx_);
        for (int i = 0; i < nx_; ++i) kx_[i] = fft_k(i, nx_, grid_.dx);

        mixed_half_.resize(grid_.size());
        mixed_full_.resize(grid_.size());
        mixed_half_out_.resize(grid_.size());
        const double inv_ny = 1.0 / ny_;
        for (int i = 0; i < nx_; ++i) {
            const double w_x = v_of_x[i] - cfg_.force_x * grid_.x(i);
            for (int j = 0; j < ny_; ++j) {
                const double pi_y = UnitSystem::hbar * ky_[j] - a_y[i];
                const double w = 0.5 * pi_y * pi_y / UnitSystem::mass + w_x;
                const std::size_t n = grid_.idx(i, j);
                mixed_half_[n] = std::polar(1.0, -0.5 * dt * w / UnitSystem::hbar);
                mixed_full_[n] = std::polar(1.0, -dt * w / UnitSystem::hbar);
                mixed_half_out_[n] = mixed_half_[n] * inv_ny;
            }
        }
        kx_phase_.resize(nx_);
        const double inv_nx = 1.0 / nx_;
        for (int i = 0; i < nx_; ++i) {
            const double w = 0.5 * UnitSystem::hbar * kx_[i] * kx_[i] / UnitSystem::mass;
            kx_phase_[i] = std::polar(1.0, -dt * w) * inv_nx;
        }
        if (cfg_.force_y != 0.0) {
            y_half_.resize(ny_);
            for (int j = 0; j < ny_; ++j)
                y_half_[j] = std::polar(1.0, 0.5 * dt * cfg_.force_y * grid_.y(j) /
                                                 UnitSystem::hbar);
        }
        if (cfg_.absorbing) build_mask();
    }

    // cos^2 taper to zero over absorb_width from each edge.
    void build_mask() {
        if (!(cfg_.absorb_width > 0)) throw ConfigError("absorbing mask needs absorb_width > 0");
        auto ramp = [w = cfg_.absorb_width](double d) {
            if (d >= w) return 1.0;
            const double s = std::sin(0.5 * std::numbers::pi * d / w);
            return s * s;
        };
        mask_.resize(grid_.size());
        for (int i = 0; i < nx_; ++i) {
            const double mx = ramp(std::min(grid_.x(i) - grid_.x_min, grid_.x_max - grid_.x(i)));
            for (int j = 0; j < ny_; ++j) {
                const double my =
                    ramp(std::min(grid_.y(j) - grid_.y_min, grid_.y_max - grid_.y(j)));
                mask_[grid_.idx(i, j)] = mx * my;
            }
        }
    }

    void mul(const std::vector<cplx>& table) {
        cplx* p = c(buf_);
        const std::size_t n = grid_.size();
        for (std::size_t s = 0; s < n; ++s) p[s] *= table[s];
    }

    void mul_kx() {
        cplx* p = c(buf_);
        for (int i = 0; i < nx_; ++i) {
            const cplx f = kx_phase_[i];
            cplx* row = p + static_cast<std::size_t>(i) * ny_;
            for (int j = 0; j < ny_; ++j) row[j] *= f;
        }
    }

    void mul_y_half() {
        cplx* p = c(buf_);
        for (int i = 0; i < nx_; ++i) {
            cplx* row = p + static_cast<std::size_t>(i) * ny_;
            for (int j = 0; j < ny_; ++j) row[j] *= y_half_[j];
        }
    }

    void mul_mask() {
        cplx* p = c(buf_);
        const std::size_t n = grid_.size();
        for (std::size_t s = 0; s < n; ++s) p[s] *= mask_[s];
    }

    void inner_kinetic_x() {
        fftw_execute(px_fwd_);
        mul_kx();
        fftw_execute(px_bwd_);
    }

    // n Strang steps with the adjacent half phases merged; enters and
    // leaves in position representation.
    void run_chunk(int n) {
        fftw_execute(py_fwd_);
        mul(mixed_half_);
        for (int s = 0; s < n; ++s) {
            inner_kinetic_x();
            if (s + 1 < n) mul(mixed_full_);
        }
        mul(mixed_half_out_);
        fftw_execute(py_bwd_);
    }

    void run_single_step() {
        if (!y_half_.empty()) mul_y_half();
        fftw_execute(py_fwd_);
        mul(mixed_half_);
        inner_kinetic_x();
        mul(mixed_half_out_);
        fftw_execute(py_bwd_);
        if (!y_half_.empty()) mul_y_half();
        if (!mask_.empty()) mul_mask();
    }

    void sample(Trajectory& traj, double t, int step_index) {
        const cplx* p = c(buf_);
        double n0 = 0, mx = 0, my = 0, mx2 = 0, my2 = 0;
        for (int i = 0; i < nx_; ++i) {
            const double x = grid_.x(i);
            const cplx* row = p + static_cast<std::size_t>(i) * ny_;
            double rown = 0, rowy = 0, rowy2 = 0;
            for (int j = 0; j < ny_; ++j) {
                const double w = std::norm(row[j]);
                const double y = grid_.y(j);
                rown += w;
                rowy += w * y;
                rowy2 += w * y * y;
            }
            n0 += rown;
            mx += rown * x;
            mx2 += rown * x * x;
            my += rowy;
            my2 += rowy2;
        }
        if (!std::isfinite(n0) || n0 <= 0.0)
            throw SolverError("propagation produced a non-finite norm at step " +
                              std::to_string(step_index));
        traj.t.push_back(t);
        traj.norm.push_back(n0 * grid_.dx * grid_.dy);
        mx /= n0;
        my /= n0;
        traj.mean_x.push_back(mx);
        traj.mean_y.push_back(my);
        traj.sigma_x.push_back(std::sqrt(std::max(0.0, mx2 / n0 - mx * mx)));
        traj.sigma_y.push_back(std::sqrt(std::max(0.0, my2 / n0 - my * my)));
        if (cfg_.track_energy) traj.energy.push_back(energy_of_buf());
    }

    double energy_of_buf() {
        const std::size_t n = grid_.size();
        std::memcpy(scratch_, buf_, sizeof(fftw_complex) * n);
        const cplx* p = c(buf_);

        double norm0 = 0.0, e_pos = 0.0;
        for (int i = 0; i < nx_; ++i) {
            const double w_x = v_x_[i] - cfg_.force_x * grid_.x(i);
            const cplx* row = p + static_cast<std::size_t>(i) * ny_;
            for (int j = 0; j < ny_; ++j) {
                const double w = std::norm(row[j]);
                norm0 += w;
                e_pos += w * (w_x - cfg_.force_y * grid_.y(j));
            }
        }

        fftw_execute(sy_fwd_);
        const cplx* s = c(scratch_);
        double e_mixed = 0.0;
        for (int i = 0; i < nx_; ++i) {
            const cplx* row = s + static_cast<std::size_t>(i) * ny_;
            for (int j = 0; j < ny_; ++j) {
                const double pi_y = UnitSystem::hbar * ky_[j] - a_y_[i];
                e_mixed += std::norm(row[j]) * 0.5 * pi_y * pi_y / UnitSystem::mass;
            }
        }
        e_mixed /= ny_;

        fftw_execute(sx_fwd_);
        double e_kx = 0.0;
        for (int i = 0; i < nx_; ++i) {
            const double t = 0.5 * UnitSystem::hbar * UnitSystem::hbar * kx_[i] * kx_[i] /
                             UnitSystem::mass;
            const cplx* row = s + static_cast<std::size_t>(i) * ny_;
            double acc = 0.0;
            for (int j = 0; j < ny_; ++j) acc += std::norm(row[j]);
            e_kx += acc * t;
        }
        e_kx /= static_cast<double>(nx_) * ny_;

        return (e_pos + e_mixed + e_kx) / norm0;
    }

    Grid2D grid_;
    EvolutionConfig cfg_;
    int nx_, ny_;
    bool use_chunks_ = false;

    std::vector<double> a_y_, v_x_, kx_, ky_;
    std::vector<cplx> mixed_half_, mixed_full_, mixed_half_out_, kx_phase_, y_half_;
    std::vector<double> mask_;

    fftw_complex* buf_ = nullptr;
    fftw_complex* scratch_ = nullptr;
    fftw_plan py_fwd_{}, py_bwd_{}, px_fwd_{}, px_bwd_{}, sy_fwd_{}, sx_fwd_{};
};

// One-call form: evolve a state in given 1D field samples.
inline Trajectory evolve(WavepacketState& state, const std::vector<double>& a_y,
                         const std::vector<double>& v_of_x, const EvolutionConfig& cfg) {
    SplitStepEvolver ev(state.grid, a_y, v_of_x, cfg);
    return ev.evolve(state, cfg.n_steps);
}

} // namespace gaugesim
