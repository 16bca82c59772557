#pragma once

// Shared test utilities.  The quadrature routine here is the independent
// oracle for the Renyi closed form: it integrates the definition
//   R_q(p || t) = 1/(q-1) * log INT p(x)^q t(x)^{1-q} dx
// directly with composite Simpson in long double, knowing nothing about the
// closed form it validates.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "warmhmc/core/phase_point.hpp"
#include "warmhmc/potentials/potential.hpp"

namespace testsupport {

inline long double log_normal_pdf(long double x, long double mean, long double var) {
    const long double twopi = 6.283185307179586476925286766559L;
    const long double z = x - mean;
    return -0.5L * std::log(twopi * var) - z * z / (2.0L * var);
}

// Renyi divergence of order q between N(m1, s1) and N(m2, s2) by direct
// quadrature of the definition.  Window: 16 standard deviations around both
// means; 1 << 16 Simpson intervals.
inline double renyi_quadrature_1d(double q, double m1, double s1, double m2, double s2) {
    const long double sd1 = std::sqrt(static_cast<long double>(s1));
    const long double sd2 = std::sqrt(static_cast<long double>(s2));
    const long double lo = std::min(static_cast<long double>(m1) - 16.0L * sd1,
                                    static_cast<long double>(m2) - 16.0L * sd2);
    const long double hi = std::max(static_cast<long double>(m1) + 16.0L * sd1,
                                    static_cast<long double>(m2) + 16.0L * sd2);
    const long n = 1 << 16;  // even
    const long double dx = (hi - lo) / static_cast<long double>(n);
    const auto integrand = [&](long double x) {
        const long double lp = log_normal_pdf(x, m1, s1);
        const long double lt = log_normal_pdf(x, m2, s2);
        return std::exp(static_cast<long double>(q) * lp +
                        (1.0L - static_cast<long double>(q)) * lt);
    };
    long double acc = integrand(lo) + integrand(hi);
    for (long i = 1; i < n; ++i)
        acc += integrand(lo + dx * static_cast<long double>(i)) * (i % 2 ? 4.0L : 2.0L);
    const long double integral = acc * dx / 3.0L;
    return static_cast<double>(std::log(integral) / (static_cast<long double>(q) - 1.0L));
}

// Same definition for the KL limit, used to anchor kl_gaussian:
//   KL(p || t) = INT p log(p/t).
inline double kl_quadrature_1d(double m1, double s1, double m2, double s2) {
    const long double sd1 = std::sqrt(static_cast<long double>(s1));
    const long double lo = static_cast<long double>(m1) - 16.0L * sd1;
    const long double hi = static_cast<long double>(m1) + 16.0L * sd1;
    const long n = 1 << 16;
    const long double dx = (hi - lo) / static_cast<long double>(n);
    const auto integrand = [&](long double x) {
        const long double lp = log_normal_pdf(x, m1, s1);
        const long double lt = log_normal_pdf(x, m2, s2);
        return std::exp(lp) * (lp - lt);
    };
    long double acc = integrand(lo) + integrand(hi);
    for (long i = 1; i < n; ++i)
        acc += integrand(lo + dx * static_cast<long double>(i)) * (i % 2 ? 4.0L : 2.0L);
    return static_cast<double>(acc * dx / 3.0L);
}

// Central finite differences against the oracle's analytic derivatives.
inline warmhmc::Vector fd_gradient(const warmhmc::PotentialOracle& oracle,
                                   const warmhmc::Vector& x, double eps = 1e-6) {
    warmhmc::Vector g(x.size());
    warmhmc::Vector xp = x, xm = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + eps;
        xm[i] = x[i] - eps;
        g[i] = (oracle.evaluate(xp) - oracle.evaluate(xm)) / (2.0 * eps);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return g;
}

inline warmhmc::Vector fd_hessian_apply(const warmhmc::PotentialOracle& oracle,
                                        const warmhmc::Vector& x, const warmhmc::Vector& v,
                                        double eps = 1e-6) {
    return (oracle.gradient(x + eps * v) - oracle.gradient(x - eps * v)) / (2.0 * eps);
}

inline warmhmc::Vector fd_third_apply(const warmhmc::PotentialOracle& oracle,
                                      const warmhmc::Vector& x, const warmhmc::Vector& v,
                                      double eps = 1e-5) {
    warmhmc::Vector hp(x.size()), hm(x.size());
    oracle.hessian_apply(x + eps * v, v, hp);
    oracle.hessian_apply(x - eps * v, v, hm);
    return (hp - hm) / (2.0 * eps);
}

// Unique scratch directory, removed on destruction.
class TempDir {
  public:
    TempDir() {
        std::random_device rd;
        std::uniform_int_distribution<unsigned long> dist;
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto candidate = std::filesystem::temp_directory_path() /
                             ("warmhmc_test_" + std::to_string(dist(rd)));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("TempDir: could not create scratch directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

}  // namespace testsupport
