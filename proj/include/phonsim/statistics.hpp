#ifndef PHONSIM_STATISTICS_HPP
#define PHONSIM_STATISTICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "phonsim/fock.hpp"

// Phonon counting statistics and the blockade / tunneling classification.

namespace phonsim {

struct PhononStats {
    double mean_n = 0.0;
    std::vector<double> populations;  // P(n), n = 0..N-1
    std::map<int, double> g;          // mu -> g^(mu)(0), mu = 2..4
    // Highest correlation order whose value is numerically trustworthy.
    // Populations far below the solver noise floor make high orders
    // meaningless; the converged-solve path lowers this by comparing two
    // truncation levels. 5 covers every order the classifier consults.
    int certified_order = 5;
};

enum class Verdict { OnePB, TwoPB, ThreePB, FourPB, PIT, Unclassified };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::OnePB: return "1PB";
        case Verdict::TwoPB: return "2PB";
        case Verdict::ThreePB: return "3PB";
        case Verdict::FourPB: return "4PB";
        case Verdict::PIT: return "PIT";
        default: return "Unclassified";
    }
}

struct Classification {
    Verdict verdict = Verdict::Unclassified;
    double f = 1.0;                    // exp(-<m>)
    std::map<int, double> f_n;         // n -> exp(-<m>) + <m> g^(n+1)(0)
    std::map<int, double> g;           // all correlation orders consulted
    std::vector<double> poisson_dev;   // [P(n) - Pois(n)] / Pois(n)
};

// <a'^mu a^mu> = sum_n n!/(n-mu)! P(n); exact for diagonal observables.
inline double factorial_moment(const std::vector<double>& populations,
                               int mu) {
    if (mu < 1) throw std::invalid_argument("correlation order must be >= 1");
    double acc = 0.0;
    for (std::size_t n = static_cast<std::size_t>(mu); n < populations.size();
         ++n) {
        double falling = 1.0;
        for (int k = 0; k < mu; ++k) falling *= static_cast<double>(n - k);
        acc += falling * populations[n];
    }
    return acc;
}

inline double correlation_order(const std::vector<double>& populations,
                                double mean_n, int mu) {
    if (mean_n < 1e-14)
        throw std::domain_error("correlation undefined for (near-)vacuum state");
    return factorial_moment(populations, mu) / std::pow(mean_n, mu);
}

inline PhononStats stats_from_state(const Matrix& rho) {
    const int n = static_cast<int>(rho.rows());
    PhononStats st;
    st.populations.resize(n);
    for (int k = 0; k < n; ++k) {
        st.populations[k] = rho(k, k).real();
        st.mean_n += k * st.populations[k];
    }
    if (st.mean_n < 1e-14)
        throw std::domain_error("correlation undefined for (near-)vacuum state");
    for (int mu = 2; mu <= 4; ++mu)
        st.g[mu] = correlation_order(st.populations, st.mean_n, mu);
    return st;
}

// Highest consecutive correlation order (starting at 2, up to 5) on which
// two solves of the same problem agree. Populations far below the solver
// noise floor yield wildly different (even negative) high-order values
// between truncations; orders past the first disagreement are untrustworthy.
inline int agreeing_correlation_orders(const PhononStats& a,
                                       const PhononStats& b,
                                       double rel_tol = 0.05,
                                       double negligible = 1e-6) {
    int order = 1;
    for (int mu = 2; mu <= 5; ++mu) {
        const double ga = correlation_order(a.populations, a.mean_n, mu);
        const double gb = correlation_order(b.populations, b.mean_n, mu);
        const double scale = std::max(std::abs(ga), std::abs(gb));
        // both effectively zero counts as agreement: the classifier only
        // compares g against thresholds of order one
        if (scale >= negligible && std::abs(ga - gb) > rel_tol * scale) break;
        order = mu;
    }
    return order;
}

// Stats from a converged solve, with correlation orders certified against
// the next-larger truncation of the same problem.
inline PhononStats certified_stats(const Matrix& rho, const Matrix& rho_check) {
    PhononStats st = stats_from_state(rho);
    st.certified_order = agreeing_correlation_orders(st,
                                                     stats_from_state(rho_check));
    return st;
}

// Relative deviation from the Poissonian distribution with the same mean.
// Entries where the reference underflows are reported as NaN.
inline std::vector<double> poisson_deviation(
    const std::vector<double>& populations, double mean_n) {
    if (!(mean_n > 0.0))
        throw std::domain_error("Poisson deviation undefined for vacuum");
    std::vector<double> dev(populations.size());
    double pois = std::exp(-mean_n);  // P(0)
    for (std::size_t n = 0; n < populations.size(); ++n) {
        if (n > 0) pois *= mean_n / static_cast<double>(n);
        dev[n] = pois > 1e-300
                     ? (populations[n] - pois) / pois
                     : std::numeric_limits<double>::quiet_NaN();
    }
    return dev;
}

// n-phonon blockade at the smallest n in 1..max_n with
//   (i)  g^(n+1)(0) <  exp(-<m>)
//   (ii) g^(n)(0)   >= exp(-<m>) + <m> g^(n+1)(0),
// else tunneling when g^(mu)(0) > 1 for mu = 2..4, else unclassified.
inline Classification classify(const PhononStats& st, int max_n = 4) {
    if (max_n < 1 || max_n > 4)
        throw std::invalid_argument("classification supports n in 1..4");
    const double m = st.mean_n;
    Classification cls;
    cls.f = std::exp(-m);
    cls.g[1] = 1.0;  // g^(1)(0) = <n>/<n>
    for (int mu = 2; mu <= max_n + 1; ++mu)
        cls.g[mu] = correlation_order(st.populations, m, mu);
    cls.poisson_dev = poisson_deviation(st.populations, m);

    static constexpr Verdict kBlockade[] = {Verdict::OnePB, Verdict::TwoPB,
                                            Verdict::ThreePB, Verdict::FourPB};
    for (int n = 1; n <= max_n; ++n) {
        // an uncertified g^(n+1) cannot support a blockade claim
        if (n + 1 > st.certified_order) break;
        cls.f_n[n] = cls.f + m * cls.g[n + 1];
        if (cls.g[n + 1] < cls.f && cls.g[n] >= cls.f_n[n]) {
            cls.verdict = kBlockade[n - 1];
            return cls;
        }
    }
    bool pit = st.certified_order >= 2;
    for (int mu = 2; mu <= std::min(4, st.certified_order); ++mu)
        pit = pit && correlation_order(st.populations, m, mu) > 1.0;
    cls.verdict = pit ? Verdict::PIT : Verdict::Unclassified;
    return cls;
}

inline double nonreciprocity_ratio(const PhononStats& left,
                                   const PhononStats& right, int mu) {
    const double denom = left.g.at(mu);
    if (denom == 0.0)
        throw std::domain_error("nonreciprocity ratio undefined, zero g");
    return right.g.at(mu) / denom;
}

}  // namespace phonsim

#endif
