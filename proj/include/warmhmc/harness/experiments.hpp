#pragma once

// Experiment definitions: each experiment runs a family of deterministic arms
// (per dimension / per seed), writes one CSV per arm plus summary CSVs, and
// evaluates its acceptance criteria.  All statistical knobs are config keys
// with defaults matching the pinned criteria; every arm derives its RNG
// stream from the first effective seed so results depend only on (config,
// seeds, seed_offset), never on worker count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "warmhmc/analysis/aux_recursion.hpp"
#include "warmhmc/analysis/chaos.hpp"
#include "warmhmc/analysis/contraction.hpp"
#include "warmhmc/analysis/dichotomy.hpp"
#include "warmhmc/analysis/fit.hpp"
#include "warmhmc/analysis/shift_schedule.hpp"
#include "warmhmc/analysis/strong_error.hpp"
#include "warmhmc/exactlaw/phase_law.hpp"
#include "warmhmc/harness/config.hpp"
#include "warmhmc/harness/criteria.hpp"
#include "warmhmc/harness/csv.hpp"
#include "warmhmc/harness/thread_pool.hpp"
#include "warmhmc/potentials/gaussian.hpp"
#include "warmhmc/potentials/logcosh.hpp"
#include "warmhmc/samplers/mhmc.hpp"
#include "warmhmc/samplers/proximal_sampler.hpp"
#include "warmhmc/samplers/two_phase.hpp"
#include "warmhmc/samplers/unadjusted.hpp"

namespace warmhmc {

struct RunContext {
    KeyValueConfig config;
    std::string out_dir;
    long workers = 1;
    std::vector<long> seeds;  // effective (offset already applied)

    long base_seed() const { return seeds.front(); }
    std::filesystem::path file(const std::string& name) const {
        return std::filesystem::path(out_dir) / name;
    }
};

struct ExperimentResult {
    std::string experiment;
    std::vector<std::string> files;
    std::vector<CriterionResult> criteria;

    bool all_pass() const {
        for (const CriterionResult& c : criteria)
            if (!c.pass) return false;
        return !criteria.empty();
    }
};

namespace detail {

class StopWatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline void add_window(CriterionResult& c, const std::string& label, double measured, double lo,
                       double hi) {
    c.add(label, measured, lo, ">=", measured >= lo);
    c.add(label, measured, hi, "<=", measured <= hi);
}

inline void add_runtime(CriterionResult& c, double seconds, double cap) {
    c.seconds = seconds;
    c.add_transient("runtime seconds", seconds, cap, "<=", seconds <= cap);
}

inline std::vector<std::string> trajectory_header() {
    return {"iter", "grad_queries", "accepted", "norm_x", "hamiltonian", "divergence"};
}

inline void write_trajectory(const std::string& path, const std::vector<ChainRecord>& records) {
    CsvWriter csv(path, trajectory_header());
    for (const ChainRecord& r : records) {
        csv.row({csv_format(r.iteration), csv_format(r.grad_queries),
                 r.has_accept_flag() ? csv_format(static_cast<long>(r.accepted)) : std::string(),
                 csv_format(r.norm_x), csv_format(r.hamiltonian),
                 r.has_divergence() ? csv_format(r.divergence) : std::string()});
    }
    csv.close();
}

// Two-level spectrum inside [a_lo, a_hi]: `slow` modes at a_lo, rest at a_hi.
// A fixed number of slow modes keeps the initial divergence O(1) as d grows,
// so the iteration count isolates the d^{1/4} mechanism instead of log d.
inline Vector two_level_spectrum(long d, long slow, double a_lo, double a_hi) {
    Vector a(d);
    for (long i = 0; i < d; ++i) a[i] = i < slow ? a_lo : a_hi;
    return a;
}

inline Vector linspace_spectrum(long d, double a_lo, double a_hi) {
    Vector a(d);
    for (long i = 0; i < d; ++i)
        a[i] = d == 1 ? a_lo : a_lo + (a_hi - a_lo) * static_cast<double>(i) /
                                   static_cast<double>(d - 1);
    return a;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// figure1: the step-size dichotomy (criterion mhmc-cold-start-dichotomy) and
// the unadjusted-escape run (criterion obabco-cold-start-escape).
// ---------------------------------------------------------------------------
inline ExperimentResult run_figure1(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "figure1";
    const long d = ctx.config.get_long("figure1.d", 10000);
    const double t_horizon = ctx.config.get_double("figure1.horizon", 1.0);
    const long prop_large = ctx.config.get_long("figure1.proposals_large", 100);
    const long prop_small = ctx.config.get_long("figure1.proposals_small", 256);
    const double sqrt_d = std::sqrt(static_cast<double>(d));

    CriterionResult dich;
    dich.name = "mhmc-cold-start-dichotomy";
    {
        detail::StopWatch watch;
        DichotomyResult first_result;
        for (std::size_t i = 0; i < ctx.seeds.size(); ++i) {
            RngStream rng(static_cast<std::uint64_t>(ctx.seeds[i]), 0);
            DichotomyResult r = acceptance_dichotomy(d, t_horizon, prop_large, prop_small, rng);
            const std::string tag = "_s" + std::to_string(ctx.seeds[i]);
            detail::write_trajectory(ctx.file("figure1_large" + tag + ".csv").string(),
                                     r.large.trajectory);
            detail::write_trajectory(ctx.file("figure1_small" + tag + ".csv").string(),
                                     r.small.trajectory);
            out.files.push_back("figure1_large" + tag + ".csv");
            out.files.push_back("figure1_small" + tag + ".csv");
            if (i == 0) first_result = std::move(r);
        }
        dich.add("large-step acceptance over first 100", first_result.large.mean_acceptance(100),
                 0.05, "<", first_result.large.mean_acceptance(100) < 0.05);
        const double norm_large = first_result.large.norm_after_queries(
            static_cast<long>(std::llround(sqrt_d)));
        dich.add("large-step norm after sqrt(d) queries", norm_large, 0.1 * sqrt_d, "<",
                 norm_large < 0.1 * sqrt_d);
        const double acc_small = first_result.small.mean_acceptance(-1);
        dich.add("small-step acceptance", acc_small, 0.4, ">", acc_small > 0.4);
        const long q_escape = first_result.small.queries_to_radius(0.8 * sqrt_d);
        dich.add("small-step queries before escape", static_cast<double>(q_escape), sqrt_d, ">=",
                 q_escape >= 0 && static_cast<double>(q_escape) >= sqrt_d);
        detail::add_runtime(dich, watch.seconds(), 120.0);
    }
    dich.finalize();
    out.criteria.push_back(std::move(dich));

    CriterionResult esc;
    esc.name = "obabco-cold-start-escape";
    {
        detail::StopWatch watch;
        const double h = std::pow(static_cast<double>(d), -0.25);
        const double budget = 200.0 * std::pow(static_cast<double>(d), 0.25);
        const double radius = 0.8 * sqrt_d;
        const long n_seeds = ctx.config.get_long("figure1.escape_seeds", 8);
        std::vector<double> queries;
        CsvWriter summary(ctx.file("escape_summary.csv").string(),
                          {"seed", "escaped", "grad_queries"});
        for (long s = 0; s < n_seeds; ++s) {
            const long seed = ctx.base_seed() + s;
            auto oracle = make_isotropic_gaussian(d);
            RngStream rng(static_cast<std::uint64_t>(seed), 3);
            UnadjustedOptions opts;
            opts.scheme = Scheme::obabco;
            opts.h = h;
            opts.gamma = std::sqrt(32.0);
            opts.steps = static_cast<long>(std::ceil(budget));  // > budget/2 steps, ample
            opts.record_every = 1;
            UnadjustedResult r = run_unadjusted(
                PhasePoint(Vector::Zero(d), rng.normal_vector(d)), *oracle, opts, rng,
                [radius](const PhasePoint& z, long) { return z.x.norm() >= radius; });
            const bool escaped = r.stopped_at > 0;
            queries.push_back(escaped ? static_cast<double>(r.grad_queries) : budget * 10.0);
            const std::string name = "escape_s" + std::to_string(seed) + ".csv";
            detail::write_trajectory(ctx.file(name).string(), r.trajectory);
            out.files.push_back(name);
            summary.row({csv_format(seed), csv_format(static_cast<long>(escaped)),
                         csv_format(static_cast<long>(r.grad_queries))});
        }
        summary.close();
        out.files.push_back("escape_summary.csv");
        const double med = detail::median(queries);
        esc.add("median queries to 0.8*sqrt(d)", med, budget, "<=", med <= budget);
        detail::add_runtime(esc, watch.seconds(), 60.0);
    }
    esc.finalize();
    out.criteria.push_back(std::move(esc));
    return out;
}

// ---------------------------------------------------------------------------
// warmstart-scaling: exact-law iteration counts N(d) with their divergence
// curves (criterion warmstart-iteration-scaling) and the OBABCO bias-floor
// order fit (criterion unadjusted-bias-floor-order).
// ---------------------------------------------------------------------------
inline ExperimentResult run_warmstart_scaling(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "warmstart-scaling";

    CriterionResult scaling;
    scaling.name = "warmstart-iteration-scaling";
    {
        detail::StopWatch watch;
        std::vector<long> dims = ctx.config.has("scaling.dims")
                                     ? ctx.config.get_long_list("scaling.dims")
                                     : std::vector<long>{256, 1024, 4096, 16384};
        const long slow = ctx.config.get_long("target.slow_modes", 16);
        const double a_lo = ctx.config.get_double("target.a_lo", 1.0);
        const double a_hi = ctx.config.get_double("target.a_hi", 4.0);
        const double h_scale = ctx.config.get_double("scaling.h_scale", 0.5);

        struct Arm {
            long d = 0;
            long n_r2 = 0, n_r3 = 0;
            std::vector<double> r2, r3, kl;
        };
        std::vector<Arm> arms(dims.size());
        {
            ThreadPool pool(ctx.workers);
            for (std::size_t i = 0; i < dims.size(); ++i) {
                pool.submit([&, i] {
                    Arm& arm = arms[i];
                    arm.d = dims[i];
                    const Vector spectrum = detail::two_level_spectrum(arm.d, slow, a_lo, a_hi);
                    const double beta = spectrum.maxCoeff();
                    const double h = h_scale * std::pow(static_cast<double>(arm.d), -0.25);
                    const double gamma = std::sqrt(32.0 * beta);
                    const auto affines = affines_of_scheme(Scheme::obabco, spectrum, h, gamma);
                    GaussianPhaseLaw law = GaussianPhaseLaw::cold_start(spectrum, 1.0 / beta);
                    arm.n_r2 = arm.n_r3 = -1;
                    for (long step = 0;; ++step) {
                        const double r2 = law.renyi_to_target(2.0);
                        const double r3 = law.renyi_to_target(3.0);
                        arm.r2.push_back(r2);
                        arm.r3.push_back(r3);
                        arm.kl.push_back(law.kl_to_target());
                        if (arm.n_r2 < 0 && r2 <= 1.0) arm.n_r2 = step;
                        if (arm.n_r3 < 0 && r3 <= 1.0) arm.n_r3 = step;
                        if (arm.n_r2 >= 0 && arm.n_r3 >= 0) break;
                        if (step > 10000000)
                            throw ConvergenceError("scaling arm exceeded iteration cap");
                        law.step(affines);
                    }
                });
            }
            pool.wait();
        }

        std::vector<double> ds, ns;
        CsvWriter summary(ctx.file("scaling_summary.csv").string(),
                          {"d", "n_r2", "n_r3", "grad_queries"});
        for (const auto& arm : arms) {
            ds.push_back(static_cast<double>(arm.d));
            ns.push_back(static_cast<double>(arm.n_r2));
            summary.row({csv_format(arm.d), csv_format(arm.n_r2), csv_format(arm.n_r3),
                         csv_format(2 * arm.n_r2)});
            const std::string name = "divergence_d" + std::to_string(arm.d) + ".csv";
            CsvWriter curve(ctx.file(name).string(),
                            {"step", "grad_queries", "R2", "chi2", "KL-limit"});
            for (std::size_t s = 0; s < arm.r2.size(); ++s) {
                curve.row({csv_format(static_cast<long>(s)), csv_format(2 * static_cast<long>(s)),
                           csv_format(arm.r2[s]), csv_format(std::expm1(arm.r2[s])),
                           csv_format(arm.kl[s])});
            }
            curve.close();
            out.files.push_back(name);
        }
        summary.close();
        out.files.push_back("scaling_summary.csv");

        const FitResult fit = fit_power_law(ds, ns);
        detail::add_window(scaling, "log N vs log d slope", fit.slope, 0.15, 0.35);
        detail::add_runtime(scaling, watch.seconds(), 300.0);
    }
    scaling.finalize();
    out.criteria.push_back(std::move(scaling));

    CriterionResult floor;
    floor.name = "unadjusted-bias-floor-order";
    {
        detail::StopWatch watch;
        const long d = ctx.config.get_long("floor.d", 4);
        const Vector spectrum = Vector::Ones(d);
        const double gamma = std::sqrt(32.0);
        std::vector<double> hs = ctx.config.has("floor.h_grid")
                                     ? ctx.config.get_double_list("floor.h_grid")
                                     : std::vector<double>{0.05, 0.0707, 0.1, 0.1414, 0.2};
        std::vector<double> floors;
        CsvWriter csv(ctx.file("bias_floor.csv").string(), {"h", "r2_floor"});
        for (double h : hs) {
            floors.push_back(scheme_bias_floor(Scheme::obabco, spectrum, h, gamma));
            csv.row({csv_format(h), csv_format(floors.back())});
        }
        csv.close();
        out.files.push_back("bias_floor.csv");
        const FitResult fit = fit_power_law(hs, floors);
        detail::add_window(floor, "R2 floor vs h slope", fit.slope, 3.5, 4.5);
        detail::add_runtime(floor, watch.seconds(), 120.0);
    }
    floor.finalize();
    out.criteria.push_back(std::move(floor));
    return out;
}

// ---------------------------------------------------------------------------
// strong-error: one-step coupling error orders (criterion
// one-step-strong-error-orders).
// ---------------------------------------------------------------------------
inline ExperimentResult run_strong_error(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "strong-error";
    CriterionResult crit;
    crit.name = "one-step-strong-error-orders";
    detail::StopWatch watch;

    const long d = ctx.config.get_long("strong_error.d", 16);
    const long samples = ctx.config.get_long("strong_error.samples", 1000);
    const Vector spectrum = detail::linspace_spectrum(d, 1.0, 4.0);
    auto oracle = make_gaussian(spectrum);
    const double gamma = std::sqrt(32.0 * spectrum.maxCoeff());
    std::vector<double> grid;
    for (int k = 8; k >= 4; --k) grid.push_back(std::pow(2.0, -k));

    const auto run_scheme = [&](Scheme scheme, std::uint64_t stream, const std::string& name) {
        RngStream rng(static_cast<std::uint64_t>(ctx.base_seed()), stream);
        StrongErrorResult r = strong_error_fit(scheme, *oracle, grid, samples,
                                               stationary_initializer(spectrum), gamma, rng);
        CsvWriter csv(ctx.file(name).string(), {"h", "err_x", "err_p"});
        for (const StrongErrorPoint& pt : r.curve)
            csv.row({csv_format(pt.h), csv_format(pt.mean_err_x), csv_format(pt.mean_err_p)});
        csv.close();
        out.files.push_back(name);
        return r;
    };

    const StrongErrorResult corrected = run_scheme(Scheme::obabco, 0, "strong_error_obabco.csv");
    const StrongErrorResult plain = run_scheme(Scheme::obabo, 1, "strong_error_obabo.csv");

    detail::add_window(crit, "corrected scheme slope_x", corrected.slope_x, 3.7, 4.3);
    detail::add_window(crit, "corrected scheme slope_p", corrected.slope_p, 2.7, 3.3);
    detail::add_window(crit, "plain scheme slope_x", plain.slope_x, 2.7, 3.3);
    const double worst_r2 = std::min({corrected.r_squared_x, corrected.r_squared_p,
                                      plain.r_squared_x});
    crit.add("regression R^2", worst_r2, 0.98, ">=", worst_r2 >= 0.98);
    detail::add_runtime(crit, watch.seconds(), 120.0);
    crit.finalize();
    out.criteria.push_back(std::move(crit));
    return out;
}

// ---------------------------------------------------------------------------
// contraction: OHO twisted-norm contraction (criterion
// oho-twisted-norm-contraction).
// ---------------------------------------------------------------------------
inline ExperimentResult run_contraction(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "contraction";
    CriterionResult crit;
    crit.name = "oho-twisted-norm-contraction";
    detail::StopWatch watch;

    std::vector<long> dims = ctx.config.has("contraction.dims")
                                 ? ctx.config.get_long_list("contraction.dims")
                                 : std::vector<long>{2, 10, 100};
    const long trials = ctx.config.get_long("contraction.trials", 1000);

    CsvWriter csv(ctx.file("contraction.csv").string(),
                  {"d", "trials", "worst_ratio", "c_prime"});
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const long d = dims[i];
        const Vector spectrum = detail::linspace_spectrum(d, 1.0, 4.0);
        auto oracle = make_gaussian(spectrum);
        const double beta = spectrum.maxCoeff();
        const double gamma = std::sqrt(32.0 * beta);
        const double h = 0.01 * std::sqrt(1.0) / (gamma * gamma);
        RngStream rng(static_cast<std::uint64_t>(ctx.base_seed()),
                      10 + static_cast<std::uint64_t>(i));
        const ContractionResult r = contraction_check(*oracle, gamma, h, trials, rng);
        csv.row({csv_format(d), csv_format(trials), csv_format(r.worst_ratio),
                 csv_format(r.c_prime)});
        crit.add("worst ratio (d=" + std::to_string(d) + ")", r.worst_ratio, 1.0, "<",
                 r.worst_ratio < 1.0);
        crit.add("fitted c' (d=" + std::to_string(d) + ")", r.c_prime, 0.0, ">", r.c_prime > 0.0);
    }
    csv.close();
    out.files.push_back("contraction.csv");
    detail::add_runtime(crit, watch.seconds(), 60.0);
    crit.finalize();
    out.criteria.push_back(std::move(crit));
    return out;
}

// ---------------------------------------------------------------------------
// chaos: Gaussian chaos tail quantiles (criterion gaussian-chaos-tails).
// ---------------------------------------------------------------------------
inline ExperimentResult run_chaos(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "chaos";
    CriterionResult crit;
    crit.name = "gaussian-chaos-tails";
    detail::StopWatch watch;

    std::vector<long> dims = ctx.config.has("chaos.dims") ? ctx.config.get_long_list("chaos.dims")
                                                          : std::vector<long>{64, 256, 1024};
    std::vector<double> deltas = ctx.config.has("chaos.deltas")
                                     ? ctx.config.get_double_list("chaos.deltas")
                                     : std::vector<double>{0.1, 0.01};
    const long trials = ctx.config.get_long("chaos.trials", 10000);
    const double b = ctx.config.get_double("chaos.logcosh_b", 1.0);
    const double c = ctx.config.get_double("chaos.logcosh_c", 1.0);

    CsvWriter csv(ctx.file("chaos.csv").string(),
                  {"tensor", "d", "delta", "quantile", "bound"});
    std::uint64_t stream = 20;
    for (long d : dims) {
        // The log-cosh third derivative is diagonal; its largest coordinate
        // magnitude sits at tanh(c x) = 1/sqrt(3).
        auto oracle = make_logcosh_perturbed(1.0, b, c, d);
        const Vector x_star = Vector::Constant(d, std::atanh(1.0 / std::sqrt(3.0)) / c);
        const std::vector<std::pair<std::string, ChaosTensor>> tensors = {
            {"diagonal", make_diagonal_chaos_tensor(d, 1.0)},
            {"logcosh", make_oracle_chaos_tensor(*oracle, x_star)}};
        for (const auto& [name, tensor] : tensors) {
            RngStream rng(static_cast<std::uint64_t>(ctx.base_seed()), stream++);
            const ChaosTailResult r = chaos_tail_check(tensor, trials, deltas, rng);
            for (const ChaosQuantileRow& row : r.table) {
                csv.row({name, csv_format(d), csv_format(row.delta), csv_format(row.quantile),
                         csv_format(row.bound)});
                crit.add(name + " d=" + std::to_string(d) + " delta=" + csv_format(row.delta),
                         row.quantile, row.bound, "<=", row.quantile <= row.bound);
            }
        }
    }
    csv.close();
    out.files.push_back("chaos.csv");
    detail::add_runtime(crit, watch.seconds(), 120.0);
    crit.finalize();
    out.criteria.push_back(std::move(crit));
    return out;
}

// ---------------------------------------------------------------------------
// aux-recursion: shifted auxiliary-process recursion (criterion
// auxiliary-shift-recursion).
// ---------------------------------------------------------------------------
inline ExperimentResult run_aux_recursion(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "aux-recursion";
    CriterionResult crit;
    crit.name = "auxiliary-shift-recursion";
    detail::StopWatch watch;

    const long d = ctx.config.get_long("aux.d", 4);
    const long steps = ctx.config.get_long("aux.steps", 200);
    const double c0 = ctx.config.get_double("aux.c0", 4.0);
    const double big_a = ctx.config.get_double("aux.A", 400.0);
    std::vector<double> kappas = ctx.config.has("aux.kappas")
                                     ? ctx.config.get_double_list("aux.kappas")
                                     : std::vector<double>{1.0, 4.0};

    std::uint64_t stream = 30;
    for (double kappa : kappas) {
        const Vector spectrum = detail::linspace_spectrum(d, 1.0, kappa);
        auto oracle = make_gaussian(spectrum);
        const double beta = spectrum.maxCoeff();
        const double gamma = std::sqrt(32.0 * beta);
        const double h = 0.01 / (std::sqrt(kappa) * gamma);
        const ShiftSchedule sched = make_shift_schedule(oracle->meta(), gamma, h, steps, c0, big_a);
        RngStream rng(static_cast<std::uint64_t>(ctx.base_seed()), stream++);
        const AuxRecursionResult r = aux_recursion_check(*oracle, gamma, h, steps, sched, rng);

        const std::string name = "aux_recursion_k" + csv_format(kappa) + ".csv";
        CsvWriter csv(ctx.file(name).string(),
                      {"step", "sq_distance", "ratio", "rate_integral"});
        for (std::size_t k = 0; k < r.ratios.size(); ++k)
            csv.row({csv_format(static_cast<long>(k)), csv_format(r.sq_distances[k]),
                     csv_format(r.ratios[k]), csv_format(r.rate_int[k])});
        csv.close();
        out.files.push_back(name);

        const std::string tag = " (kappa=" + csv_format(kappa) + ")";
        double worst = 0.0;
        bool bounded = true;
        for (std::size_t k = 0; k + 1 < r.ratios.size(); ++k) {
            worst = std::max(worst, r.ratios[k]);
            bounded = bounded &&
                      r.ratios[k] <= std::exp(-r.c_prime * r.rate_int[k]) * (1.0 + 1e-9);
        }
        crit.add("fitted c'" + tag, r.c_prime, 0.0, ">", r.c_prime > 0.0);
        crit.add("worst dynamic ratio" + tag, worst, 1.0, "<", worst < 1.0);
        crit.add("ratios within exp(-c' * rate)" + tag, bounded ? 1.0 : 0.0, 1.0, "==", bounded);
        crit.add("terminal agreement exact" + tag, r.terminal_exact ? 1.0 : 0.0, 1.0, "==",
                 r.terminal_exact);
    }
    detail::add_runtime(crit, watch.seconds(), 60.0);
    crit.finalize();
    out.criteria.push_back(std::move(crit));
    return out;
}

// ---------------------------------------------------------------------------
// two-phase-e2e: exactness of the Metropolized phase (criterion
// mhmc-stationarity) and the full warm-start pipeline on the log-cosh target
// (criterion two-phase-end-to-end).
// ---------------------------------------------------------------------------
inline ExperimentResult run_two_phase_e2e(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "two-phase-e2e";

    CriterionResult exact;
    exact.name = "mhmc-stationarity";
    {
        detail::StopWatch watch;
        const long long_steps = ctx.config.get_long("exactness.steps", 1000000);
        const double h = ctx.config.get_double("exactness.h", 0.5);
        const long K = ctx.config.get_long("exactness.leapfrog_steps", 2);

        auto oracle = make_isotropic_gaussian(1);
        RngStream rng(static_cast<std::uint64_t>(ctx.base_seed()), 40);
        MhmcParams params{LeapfrogParams(h, K), true, false};
        MhmcChain chain(*oracle, params, Vector::Zero(1), rng);
        double s1 = 0.0, s2 = 0.0;
        std::vector<ChainRecord> thinned;
        for (long i = 0; i < long_steps; ++i) {
            ChainRecord rec = chain.step();
            const double x = chain.position()[0];
            s1 += x;
            s2 += x * x;
            if ((i + 1) % 10000 == 0) thinned.push_back(rec);
        }
        const double mean = s1 / static_cast<double>(long_steps);
        const double var = s2 / static_cast<double>(long_steps) - mean * mean;
        detail::write_trajectory(ctx.file("mhmc_chain.csv").string(), thinned);
        out.files.push_back("mhmc_chain.csv");

        const long ks_chains = ctx.config.get_long("ks.chains", 100000);
        const long ks_steps = ctx.config.get_long("ks.steps", 100);
        std::vector<double> xs(static_cast<std::size_t>(ks_chains));
        {
            ThreadPool pool(ctx.workers);
            const long block = 4096;
            for (long lo = 0; lo < ks_chains; lo += block) {
                const long hi = std::min(ks_chains, lo + block);
                pool.submit([&, lo, hi] {
                    auto local_oracle = make_isotropic_gaussian(1);
                    for (long ci = lo; ci < hi; ++ci) {
                        RngStream crng(static_cast<std::uint64_t>(ctx.base_seed() + ci), 41);
                        Vector x0(1);
                        x0[0] = crng.normal();
                        MhmcParams p{LeapfrogParams(h, K), true, false};
                        MhmcChain c(*local_oracle, p, x0, crng);
                        for (long s = 0; s < ks_steps; ++s) c.step();
                        xs[static_cast<std::size_t>(ci)] = c.position()[0];
                    }
                });
            }
            pool.wait();
        }
        std::sort(xs.begin(), xs.end());
        double ks = 0.0;
        for (long i = 0; i < ks_chains; ++i) {
            const double f = 0.5 * std::erfc(-xs[static_cast<std::size_t>(i)] / std::sqrt(2.0));
            ks = std::max(ks, std::abs(f - static_cast<double>(i) / ks_chains));
            ks = std::max(ks, std::abs(static_cast<double>(i + 1) / ks_chains - f));
        }
        const double critical = 1.628 / std::sqrt(static_cast<double>(ks_chains));
        CsvWriter csv(ctx.file("mhmc_exactness.csv").string(),
                      {"steps", "mean", "variance", "ks_chains", "ks_steps", "ks_statistic",
                       "ks_critical"});
        csv.row({csv_format(long_steps), csv_format(mean), csv_format(var),
                 csv_format(ks_chains), csv_format(ks_steps), csv_format(ks),
                 csv_format(critical)});
        csv.close();
        out.files.push_back("mhmc_exactness.csv");

        detail::add_window(exact, "long-chain mean", mean, -0.01, 0.01);
        detail::add_window(exact, "long-chain variance", var, 0.98, 1.02);
        exact.add("KS statistic", ks, critical, "<", ks < critical);
        detail::add_runtime(exact, watch.seconds(), 120.0);
    }
    exact.finalize();
    out.criteria.push_back(std::move(exact));

    CriterionResult e2e;
    e2e.name = "two-phase-end-to-end";
    {
        detail::StopWatch watch;
        const long d = ctx.config.get_long("e2e.d", 256);
        const long chains = ctx.config.get_long("e2e.chains", 64);
        const double a = ctx.config.get_double("e2e.a", 1.0);
        const double b = ctx.config.get_double("e2e.b", 1.0);
        const double c = ctx.config.get_double("e2e.c", 1.0);
        const double eps = ctx.config.get_double("e2e.eps", 0.05);
        ScheduleConstants constants;
        constants.c_w = ctx.config.get_double("schedule.c_w", 1.0);
        constants.c_n1 = ctx.config.get_double("schedule.c_n1", 1.0);
        constants.c_h2 = ctx.config.get_double("schedule.c_h2", 1.0);
        constants.c_n2 = ctx.config.get_double("schedule.c_n2", 1.0);
        constants.log_override = ctx.config.get_double("schedule.log_override", 0.0);

        const RegularityMeta meta = LogCoshPotential(a, b, c, d).meta();
        const TwoPhasePlan plan = plan_two_phase(meta, d, 2.0, eps, constants);

        struct ChainOut {
            long seed = 0;
            double acceptance = 0.0;
            double mean_coord = 0.0;
            std::uint64_t queries = 0;
            long accepts = 0, proposals = 0;
            std::vector<ChainRecord> trajectory;
        };
        std::vector<ChainOut> results(static_cast<std::size_t>(chains));
        {
            ThreadPool pool(ctx.workers);
            for (long ci = 0; ci < chains; ++ci) {
                pool.submit([&, ci] {
                    ChainOut& slot = results[static_cast<std::size_t>(ci)];
                    slot.seed = ctx.base_seed() + ci;
                    auto oracle = make_logcosh_perturbed(a, b, c, d);
                    RngStream rng(static_cast<std::uint64_t>(slot.seed), 42);
                    TwoPhaseResult r = two_phase_sample(plan, *oracle, rng);
                    slot.acceptance = r.mhmc_acceptance;
                    slot.mean_coord = r.sample.x.mean();
                    slot.queries = r.total_queries();
                    slot.proposals = plan.mhmc.iterations;
                    slot.accepts = static_cast<long>(
                        std::llround(r.mhmc_acceptance * static_cast<double>(plan.mhmc.iterations)));
                    slot.trajectory = std::move(r.trajectory);
                });
            }
            pool.wait();
        }

        CsvWriter summary(ctx.file("e2e_summary.csv").string(),
                          {"seed", "acceptance", "mean_coord", "grad_queries", "planned_queries"});
        double pooled_mean = 0.0;
        long total_accepts = 0, total_proposals = 0;
        std::uint64_t max_queries = 0;
        for (const ChainOut& slot : results) {
            summary.row({csv_format(slot.seed), csv_format(slot.acceptance),
                         csv_format(slot.mean_coord), csv_format(slot.queries),
                         csv_format(plan.predicted_queries())});
            pooled_mean += slot.mean_coord;
            total_accepts += slot.accepts;
            total_proposals += slot.proposals;
            max_queries = std::max(max_queries, slot.queries);
            const std::string name = "e2e_chain_s" + std::to_string(slot.seed) + ".csv";
            detail::write_trajectory(ctx.file(name).string(), slot.trajectory);
            out.files.push_back(name);
        }
        summary.close();
        out.files.push_back("e2e_summary.csv");
        pooled_mean /= static_cast<double>(chains);
        const double pooled_acc =
            static_cast<double>(total_accepts) / static_cast<double>(total_proposals);
        const double query_ratio =
            static_cast<double>(max_queries) / static_cast<double>(plan.predicted_queries());

        e2e.add("phase-2 pooled acceptance", pooled_acc, 0.35, ">=", pooled_acc >= 0.35);
        detail::add_window(e2e, "pooled coordinate mean", pooled_mean, -0.05, 0.05);
        e2e.add("grad queries / plan", query_ratio, 2.0, "<=", query_ratio <= 2.0);
        detail::add_runtime(e2e, watch.seconds(), 300.0);
    }
    e2e.finalize();
    out.criteria.push_back(std::move(e2e));
    return out;
}

// ---------------------------------------------------------------------------
// proximal-e2e: restricted-Gaussian-oracle backward step against the
// conjugate closed form (criterion proximal-backward-step-moments).
// ---------------------------------------------------------------------------
inline ExperimentResult run_proximal_e2e(const RunContext& ctx) {
    ExperimentResult out;
    out.experiment = "proximal-e2e";
    CriterionResult crit;
    crit.name = "proximal-backward-step-moments";
    detail::StopWatch watch;

    const long d = ctx.config.get_long("proximal.d", 16);
    const long draws = ctx.config.get_long("proximal.draws", 10000);
    const double eps = ctx.config.get_double("proximal.eps", 0.3);
    const Vector spectrum = detail::linspace_spectrum(d, 1.0, 4.0);
    auto base = make_gaussian(spectrum);
    const double h_prox = 1.0 / (2.0 * base->meta().beta);

    RngStream seed_rng(static_cast<std::uint64_t>(ctx.base_seed()), 50);
    const Vector x0 =
        spectrum.cwiseSqrt().cwiseInverse().cwiseProduct(seed_rng.normal_vector(d));
    const Vector y = x0 + std::sqrt(h_prox) * seed_rng.normal_vector(d);
    const RgoClosedForm cf = rgo_gaussian_closed_form(spectrum, y, h_prox);

    ProximalShiftedOracle shifted(*base, y, h_prox);
    const double shifted_kappa = shifted.meta().kappa();
    const Vector x_star = proximal_oracle(shifted, 1e-10);
    RecenteredOracle recentred(shifted, x_star);
    const PlanFactory factory = make_rgo_plan_factory(eps, base->meta().kappa());
    const TwoPhasePlan plan = factory(recentred.meta(), d);

    struct Block {
        Vector m1, m2;
    };
    const long block_size = 256;
    const long n_blocks = (draws + block_size - 1) / block_size;
    std::vector<Block> blocks(static_cast<std::size_t>(n_blocks));
    {
        ThreadPool pool(ctx.workers);
        for (long bi = 0; bi < n_blocks; ++bi) {
            pool.submit([&, bi] {
                Block& blk = blocks[static_cast<std::size_t>(bi)];
                blk.m1 = Vector::Zero(d);
                blk.m2 = Vector::Zero(d);
                auto local_base = make_gaussian(spectrum);
                ProximalShiftedOracle local_shifted(*local_base, y, h_prox);
                RecenteredOracle local_rec(local_shifted, x_star);
                const long lo = bi * block_size, hi = std::min(draws, lo + block_size);
                for (long k = lo; k < hi; ++k) {
                    RngStream rng(static_cast<std::uint64_t>(ctx.base_seed() + k), 51);
                    TwoPhaseResult r = two_phase_sample(plan, local_rec, rng, 0);
                    const Vector x = x_star + r.sample.x;
                    blk.m1 += x;
                    blk.m2 += x.cwiseProduct(x);
                }
            });
        }
        pool.wait();
    }
    Vector m1 = Vector::Zero(d), m2 = Vector::Zero(d);
    for (const Block& blk : blocks) {
        m1 += blk.m1;
        m2 += blk.m2;
    }
    m1 /= static_cast<double>(draws);
    m2 = m2 / static_cast<double>(draws) - m1.cwiseProduct(m1);

    CsvWriter csv(ctx.file("rgo_moments.csv").string(),
                  {"coord", "mean_emp", "mean_exact", "var_emp", "var_exact"});
    double var_rel = 0.0;
    for (long i = 0; i < d; ++i) {
        csv.row({csv_format(i), csv_format(m1[i]), csv_format(cf.mean[i]), csv_format(m2[i]),
                 csv_format(cf.cov_diag[i])});
        var_rel = std::max(var_rel, std::abs(m2[i] - cf.cov_diag[i]) / cf.cov_diag[i]);
    }
    csv.close();
    out.files.push_back("rgo_moments.csv");
    const double mean_rel = (m1 - cf.mean).norm() / cf.mean.norm();

    // A short outer alternation exercises the full forward/backward loop.
    {
        auto outer_base = make_gaussian(spectrum);
        RngStream rng(static_cast<std::uint64_t>(ctx.base_seed()), 52);
        ProximalResult pr = proximal_sampler(*outer_base, factory, h_prox,
                                             ctx.config.get_long("proximal.n_outer", 5), rng);
        detail::write_trajectory(ctx.file("proximal_chain.csv").string(), pr.trajectory);
        out.files.push_back("proximal_chain.csv");
    }

    crit.add("shifted condition number", shifted_kappa, 3.0, "<=", shifted_kappa <= 3.0);
    crit.add("mean relative error", mean_rel, 0.05, "<=", mean_rel <= 0.05);
    crit.add("variance relative error (max coord)", var_rel, 0.05, "<=", var_rel <= 0.05);
    detail::add_runtime(crit, watch.seconds(), 60.0);
    crit.finalize();
    out.criteria.push_back(std::move(crit));
    return out;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "figure1",     "warmstart-scaling", "strong-error",  "contraction",
        "chaos",       "aux-recursion",     "two-phase-e2e", "proximal-e2e"};
    return names;
}

inline ExperimentResult run_experiment(const std::string& name, const RunContext& ctx) {
    if (ctx.seeds.empty()) throw ConfigError("run_experiment: seeds list is empty");
    if (name == "figure1") return run_figure1(ctx);
    if (name == "warmstart-scaling") return run_warmstart_scaling(ctx);
    if (name == "strong-error") return run_strong_error(ctx);
    if (name == "contraction") return run_contraction(ctx);
    if (name == "chaos") return run_chaos(ctx);
    if (name == "aux-recursion") return run_aux_recursion(ctx);
    if (name == "two-phase-e2e") return run_two_phase_e2e(ctx);
    if (name == "proximal-e2e") return run_proximal_e2e(ctx);
    throw ConfigError("unknown experiment: " + name);
}

}  // namespace warmhmc
