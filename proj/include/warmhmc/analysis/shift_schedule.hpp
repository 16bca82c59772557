#pragma once

// Time-varying momentum-shift schedule for the auxiliary-process recursion.
// The instantaneous shift rates on the horizon [0, Nh] are
//   η_t^p = c₀·ω / (exp(ω·(Nh − t + A·h)) − 1),   η_t^x = γ_t·η_t^p / 2,
// with effective friction γ_t = γ + η_t^p, and the per-step shift uses the
// integrals of these rates over [kh, (k+1)h].  ω is the contraction rate of
// the underlying kinetic dynamics: α/γ in the high-friction regime
// γ ≥ sqrt(32β), and −sqrt(β) otherwise.  A is kept large relative to c₀ so
// every per-step shift stays small (c₀/A ≈ 0.01 with the defaults).

#include <cmath>
#include <vector>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/regularity.hpp"

namespace warmhmc {

inline double contraction_omega(const RegularityMeta& meta, double gamma) {
    meta.validate();
    if (!(meta.alpha > 0.0)) throw ConfigError("contraction_omega: requires alpha > 0");
    if (!(gamma > 0.0)) throw ConfigError("contraction_omega: requires gamma > 0");
    if (gamma * (1.0 + 1e-9) >= std::sqrt(32.0 * meta.beta)) return meta.alpha / gamma;
    return -std::sqrt(meta.beta);
}

struct ShiftSchedule {
    double omega = 0.0;
    double gamma = 0.0;  // base friction
    double c0 = 4.0;
    double big_a = 400.0;  // the constant A
    double h = 0.0;
    long steps = 0;  // N

    std::vector<double> eta_p_int;  // ∫ η_t^p over [kh,(k+1)h], k = 0..N−1
    std::vector<double> eta_x_int;  // ∫ η_t^x over the same windows
    std::vector<double> rate_int;   // ∫ (ω₊ + η_t^p), the contraction exponent

    double horizon() const { return h * static_cast<double>(steps); }

    double eta_p_at(double t) const {
        const double u = horizon() - t + big_a * h;
        return c0 * omega / std::expm1(omega * u);
    }
    double gamma_at(double t) const { return gamma + eta_p_at(t); }
    double eta_x_at(double t) const { return gamma_at(t) * eta_p_at(t) / 2.0; }
};

namespace detail {

// ∫ c₀ ω / (e^{ωu} − 1) du = c₀·(log(e^{ωu} − 1) − ωu) + const; the expm1
// ratio form below is stable for either sign of ω and degrades gracefully to
// c₀·log(u_hi/u_lo) as ω → 0.
inline double eta_p_integral(double c0, double omega, double u_lo, double u_hi) {
    if (omega * u_lo > 35.0)  // deep tail: η_t^p ≈ c₀ ω e^{−ωu}, avoids expm1 overflow
        return c0 * (std::exp(-omega * u_lo) - std::exp(-omega * u_hi));
    return c0 * (std::log(std::expm1(omega * u_hi) / std::expm1(omega * u_lo)) -
                 omega * (u_hi - u_lo));
}

template <class F>
double simpson(const F& f, double lo, double hi, int panels) {
    const double w = (hi - lo) / (2.0 * panels);
    double acc = f(lo) + f(hi);
    for (int i = 1; i < 2 * panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + w * i);
    return acc * w / 3.0;
}

}  // namespace detail

inline ShiftSchedule make_shift_schedule(const RegularityMeta& meta, double gamma, double h,
                                         long steps, double c0 = 4.0, double big_a = 400.0) {
    if (!(h > 0.0)) throw ConfigError("make_shift_schedule: h must be > 0");
    if (steps < 1) throw ConfigError("make_shift_schedule: steps must be >= 1");
    if (!(c0 > 0.0) || !(big_a > 0.0))
        throw ConfigError("make_shift_schedule: c0 and A must be > 0");

    ShiftSchedule s;
    s.omega = contraction_omega(meta, gamma);
    s.gamma = gamma;
    s.c0 = c0;
    s.big_a = big_a;
    s.h = h;
    s.steps = steps;
    s.eta_p_int.resize(static_cast<std::size_t>(steps));
    s.eta_x_int.resize(static_cast<std::size_t>(steps));
    s.rate_int.resize(static_cast<std::size_t>(steps));

    const double omega_plus = std::max(s.omega, 0.0);
    for (long k = 0; k < steps; ++k) {
        // t ∈ [kh, (k+1)h] maps to u = Nh − t + A·h ∈ [(N−k−1+A)h, (N−k+A)h].
        const double u_lo = (static_cast<double>(steps - k - 1) + big_a) * h;
        const double u_hi = (static_cast<double>(steps - k) + big_a) * h;
        s.eta_p_int[k] = detail::eta_p_integral(c0, s.omega, u_lo, u_hi);
        s.eta_x_int[k] = detail::simpson(
            [&s](double t) { return s.eta_x_at(t); }, static_cast<double>(k) * h,
            static_cast<double>(k + 1) * h, 64);
        s.rate_int[k] = omega_plus * h + s.eta_p_int[k];
    }
    return s;
}

}  // namespace warmhmc
