#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "bounds.hpp"
#include "excitations.hpp"
#include "scenarios.hpp"

namespace qmarg {

using cplx = std::complex<double>;

/// Counter-based generator: the k-th draw of stream (seed, stream) is splitmix64 of a mixed counter.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform in (0, 1).
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Box-Muller; std::normal_distribution is not reproducible across standard libraries.
    double normal() {
        if (spare_) {
            double v = *spare_;
            spare_.reset();
            return v;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double th = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(th);
        return r * std::cos(th);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_;
};

/// Amplitudes indexed like basis(s).
struct StateVector {
    std::vector<cplx> amp;
    std::vector<bool> mask;  // empty means full support

    double norm2() const {
        double n = 0;
        for (const auto& a : amp) n += std::norm(a);
        return n;
    }
};

/// Single index mask over basis(s) for the given weights.
inline std::vector<bool> weight_mask(const Scenario& s, const std::vector<Weight>& weights) {
    const auto b = basis(s);
    std::set<RatVec> want(weights.begin(), weights.end());
    std::vector<bool> m(b.size(), false);
    for (std::size_t i = 0; i < b.size(); ++i) m[i] = want.count(b[i].weight) > 0;
    return m;
}

/// {lambda} together with the second layer: the space spanned by the highest weight vector and N2.
inline std::vector<bool> p2_subspace_mask(const Scenario& s) {
    const auto L = excitation_layers(s);
    auto w = L.layer(0);
    w.insert(w.end(), L.layer(2).begin(), L.layer(2).end());
    return weight_mask(s, w);
}

inline StateVector basis_state(const Scenario& s, std::size_t index) {
    StateVector psi;
    psi.amp.assign(dimension(s), cplx(0));
    psi.amp.at(index) = 1.0;
    return psi;
}

/// Gaussian amplitudes on the masked entries, normalized.
inline StateVector random_state(const Scenario& s, std::uint64_t seed, std::uint64_t index = 0,
                                const std::vector<bool>& mask = {}) {
    const std::size_t d = dimension(s);
    if (!mask.empty() && mask.size() != d) throw std::invalid_argument("random_state: mask size mismatch");
    if (!mask.empty() && std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
        throw std::invalid_argument("random_state: empty mask");
    }
    CounterRng rng(seed, index);
    StateVector psi;
    psi.mask = mask;
    psi.amp.assign(d, cplx(0));
    for (std::size_t i = 0; i < d; ++i) {
        double re = rng.normal(), im = rng.normal();
        if (mask.empty() || mask[i]) psi.amp[i] = cplx(re, im);
    }
    const double n = std::sqrt(psi.norm2());
    for (auto& a : psi.amp) a /= n;
    return psi;
}

struct MarginalData {
    std::vector<Eigen::MatrixXcd> rho;  // one per factor, or a single 1-RDM
    Eigen::MatrixXd M;                  // Fock correlation matrix, 2N x 2N
};

namespace detail {

/// Lowering tables and basis are reused across samples of one scenario.
struct MarginalPlan {
    Scenario scenario;
    std::vector<BasisState> basis;
    LoweringAction lowering;
    RootSystemSpec spec;
    std::vector<std::size_t> fock_mask;  // basis index -> occupation bitmask

    explicit MarginalPlan(const Scenario& s)
        : scenario(s), basis(qmarg::basis(s)), lowering(lowering_action(s)), spec(root_system(s)) {
        if (s.is_fock()) {
            for (const auto& b : basis) {
                std::size_t m = 0;
                for (std::size_t i = 0; i < b.occ.size(); ++i) m |= static_cast<std::size_t>(b.occ[i]) << i;
                fock_mask.push_back(m);
            }
        }
    }
};

inline int parity_before(std::size_t mask, std::size_t i) {
    return (__builtin_popcountll(mask & ((std::size_t{1} << i) - 1)) % 2) ? -1 : 1;
}

/// Majorana c_k on a dense 2^N vector; c_{2i} = a_i + a_i^dagger, c_{2i+1} = i (a_i - a_i^dagger), 0-based.
inline std::vector<cplx> majorana(const std::vector<cplx>& v, std::size_t k) {
    const std::size_t i = k / 2, bit = std::size_t{1} << i;
    std::vector<cplx> out(v.size(), cplx(0));
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (v[m] == cplx(0)) continue;
        const double sg = parity_before(m, i);
        cplx c = sg;
        if (k % 2 == 1) c *= (m & bit) ? cplx(0, 1) : cplx(0, -1);
        out[m ^ bit] += c * v[m];
    }
    return out;
}

inline std::vector<double> sorted_eigenvalues(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (double x : ev) {
        if (!std::isfinite(x)) throw std::runtime_error("eigenvalue solver produced a non-finite value");
    }
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

/// Pfaffian of a real antisymmetric matrix by pivoted skew Gaussian elimination.
inline double pfaffian(Eigen::MatrixXd A) {
    const Eigen::Index n = A.rows();
    if (n % 2) return 0.0;
    double pf = 1.0;
    for (Eigen::Index k = 0; k < n - 1; k += 2) {
        Eigen::Index p = k + 1;
        A.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&p);
        p += k + 1;
        if (p != k + 1) {
            A.row(k + 1).swap(A.row(p));
            A.col(k + 1).swap(A.col(p));
            pf = -pf;
        }
        const double piv = A(k, k + 1);
        if (piv == 0.0) return 0.0;
        pf *= piv;
        if (k + 2 < n) {
            Eigen::VectorXd tau = A.row(k).tail(n - k - 2) / piv;
            Eigen::VectorXd col = A.col(k + 1).tail(n - k - 2);
            A.bottomRightCorner(n - k - 2, n - k - 2) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

}  // namespace detail

/// One-body marginals.
inline MarginalData marginal(const detail::MarginalPlan& plan, const StateVector& psi) {
    const Scenario& s = plan.scenario;
    if (psi.amp.size() != plan.basis.size()) throw std::invalid_argument("marginal: state dimension mismatch");
    MarginalData out;

    if (s.is_fock()) {
        const std::size_t N = s.modes;
        std::vector<cplx> full(std::size_t{1} << N, cplx(0));
        for (std::size_t k = 0; k < psi.amp.size(); ++k) full[plan.fock_mask[k]] = psi.amp[k];
        std::vector<std::vector<cplx>> c(2 * N);
        for (std::size_t k = 0; k < 2 * N; ++k) c[k] = detail::majorana(full, k);
        out.M = Eigen::MatrixXd::Zero(2 * N, 2 * N);
        for (std::size_t k = 0; k < 2 * N; ++k) {
            for (std::size_t l = k + 1; l < 2 * N; ++l) {
                // i <psi| c_k c_l |psi> = i <c_k psi | c_l psi>
                cplx e = 0;
                for (std::size_t m = 0; m < full.size(); ++m) e += std::conj(c[k][m]) * c[l][m];
                const double v = (cplx(0, 1) * e).real();
                out.M(k, l) = v;
                out.M(l, k) = -v;
            }
        }
        return out;
    }

    const auto& spec = plan.spec;
    for (const auto& f : spec.factors) out.rho.push_back(Eigen::MatrixXcd::Zero(f.size, f.size));
    auto block_of = [&](std::size_t flat) {
        std::size_t b = 0, off = 0;
        while (off + spec.factors[b].size <= flat) off += spec.factors[b++].size;
        return std::pair{b, flat - off};
    };
    // diagonal: populations from weights
    for (std::size_t k = 0; k < plan.basis.size(); ++k) {
        const double p = std::norm(psi.amp[k]);
        if (p == 0.0) continue;
        const auto& w = plan.basis[k].weight;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i].is_zero()) continue;
            auto [b, j] = block_of(i);
            out.rho[b](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += p * to_double(w[i]);
        }
    }
    // off-diagonal: root e_to - e_from moves from -> to, expectation is rho(from, to)
    for (const auto& e : plan.lowering.entries) {
        const auto& v = plan.lowering.roots[e.root].vector;
        std::size_t to = 0, from = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 1) to = i;
            else if (v[i] == -1) from = i;
        }
        const auto [b, jf] = block_of(from);
        const std::size_t jt = block_of(to).second;
        const cplx val = std::conj(psi.amp[e.target]) * e.coefficient * psi.amp[e.source];
        out.rho[b](static_cast<Eigen::Index>(jf), static_cast<Eigen::Index>(jt)) += val;
        out.rho[b](static_cast<Eigen::Index>(jt), static_cast<Eigen::Index>(jf)) += std::conj(val);
    }
    return out;
}

inline MarginalData marginal(const Scenario& s, const StateVector& psi) { return marginal(detail::MarginalPlan(s), psi); }

struct SpectrumSample {
    std::vector<double> point;
    int orientation = 1;  // sign of the Pfaffian, Fock only
};

/// Local spectra sorted into the Weyl chamber.
inline SpectrumSample spectra(const Scenario& s, const MarginalData& m) {
    SpectrumSample out;
    const auto spec = root_system(s);
    if (s.is_fock()) {
        const std::size_t N = s.modes;
        Eigen::MatrixXcd H = cplx(0, 1) * m.M.cast<cplx>();
        auto ev = detail::sorted_eigenvalues(H);
        std::vector<double> x(ev.begin(), ev.begin() + static_cast<std::ptrdiff_t>(N));
        for (auto& v : x) v = std::max(v, 0.0) / 2.0;
        const double pf = detail::pfaffian(m.M);
        out.orientation = pf < 0 ? -1 : 1;
        out.point = to_chamber(spec, x, {out.orientation});
        return out;
    }
    for (const auto& r : m.rho) {
        auto ev = detail::sorted_eigenvalues(r);
        out.point.insert(out.point.end(), ev.begin(), ev.end());
    }
    return out;
}

/// Weighted average of support weights.
inline std::vector<double> mu_torus(const Scenario& s, const StateVector& psi) {
    const auto b = basis(s);
    std::vector<double> out(root_system(s).rank(), 0.0);
    for (std::size_t k = 0; k < b.size(); ++k) {
        const double p = std::norm(psi.amp[k]);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += p * to_double(b[k].weight[i]);
    }
    return out;
}

/// Diagonal of the marginal in toolkit coordinates (Fock: half the 2x2 block entries).
inline std::vector<double> marginal_diagonal(const Scenario& s, const MarginalData& m) {
    std::vector<double> out;
    if (s.is_fock()) {
        for (std::size_t i = 0; i < s.modes; ++i) {
            out.push_back(m.M(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(2 * i + 1)) / 2.0);
        }
        return out;
    }
    for (const auto& r : m.rho) {
        for (Eigen::Index i = 0; i < r.rows(); ++i) out.push_back(r(i, i).real());
    }
    return out;
}

/// Sampling configuration for containment runs.
struct SampleConfig {
    std::size_t count = 10000;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    std::vector<bool> mask;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Spectra of count states; sample k uses stream (seed, k), so output is independent of the thread count.
inline std::vector<SpectrumSample> sample_spectra(const Scenario& s, const SampleConfig& cfg) {
    const detail::MarginalPlan plan(s);
    std::vector<SpectrumSample> out(cfg.count);
    unsigned T = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    T = static_cast<unsigned>(std::min<std::size_t>(T, std::max<std::size_t>(cfg.count, 1)));
    auto work = [&](unsigned t) {
        for (std::size_t k = t; k < cfg.count; k += T) {
            out[k] = spectra(s, marginal(plan, random_state(s, cfg.seed, k, cfg.mask)));
        }
    };
    if (T == 1) {
        work(0);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
    return out;
}

struct ContainmentStats {
    std::size_t count = 0;
    std::size_t inside = 0;
    double max_violation = 0.0;
    std::vector<double> nearest_to_vertex;  // per companion vertex, min Euclidean distance over samples

    double fraction() const { return count ? static_cast<double>(inside) / static_cast<double>(count) : 0.0; }
};

/// Constraint rows converted once to doubles.
struct RealHPolytope {
    std::vector<std::pair<std::vector<double>, double>> ineq, eq;

    explicit RealHPolytope(const HPolytope& h) {
        auto conv = [](const Constraint& c) {
            std::vector<double> a;
            for (const auto& x : c.normal) a.push_back(to_double(x));
            return std::pair{a, to_double(c.offset)};
        };
        for (const auto& c : h.inequalities) ineq.push_back(conv(c));
        for (const auto& c : h.equalities) eq.push_back(conv(c));
    }

    double violation(const std::vector<double>& x) const {
        double v = 0.0;
        auto dotd = [&](const std::vector<double>& a) {
            double d = 0;
            for (std::size_t i = 0; i < a.size(); ++i) d += a[i] * x[i];
            return d;
        };
        for (const auto& [a, b] : ineq) v = std::max(v, b - dotd(a));
        for (const auto& [a, b] : eq) v = std::max(v, std::abs(dotd(a) - b));
        return v;
    }
};

inline ContainmentStats containment_stats(const std::vector<SpectrumSample>& samples, const HPolytope& h, double tol,
                                          const VPolytope* companion = nullptr) {
    const RealHPolytope rh(h);
    ContainmentStats st;
    st.count = samples.size();
    if (companion) st.nearest_to_vertex.assign(companion->vertices.size(), std::numeric_limits<double>::infinity());
    for (const auto& smp : samples) {
        const double v = rh.violation(smp.point);
        st.max_violation = std::max(st.max_violation, v);
        if (v <= tol) ++st.inside;
        if (companion) {
            for (std::size_t j = 0; j < companion->vertices.size(); ++j) {
                double d2 = 0;
                for (std::size_t i = 0; i < smp.point.size(); ++i) {
                    const double diff = smp.point[i] - to_double(companion->vertices[j][i]);
                    d2 += diff * diff;
                }
                st.nearest_to_vertex[j] = std::min(st.nearest_to_vertex[j], std::sqrt(d2));
            }
        }
    }
    return st;
}

inline ContainmentStats containment_stats(const Scenario& s, const HPolytope& h, const SampleConfig& cfg,
                                          const VPolytope* companion = nullptr) {
    return containment_stats(sample_spectra(s, cfg), h, cfg.tol, companion);
}

/// Second coordinate of the curve swept by joining two spheres of radius r centred at z2 = -1 and z2 = +1:
/// z2 = z1 (z1 - u) / (r^2 - z1 u), u in (-r, r).
inline double sphere_join_curve(double z1, double u, double r) { return z1 * (z1 - u) / (r * r - z1 * u); }

/// Squared distance of the join point from the centre of the second sphere minus r^2.
/// Zero when (z1, sphere_join_curve(z1, u, r)) lies on a segment between the spheres.
inline double sphere_join_residual(double z1, double u, double r) {
    const double z2 = sphere_join_curve(z1, u, r);
    const double a = ((z2 - 1) * u + 2 * z1) / (1 + z2);
    const double vw2 = (r * r - u * u) * (z2 - 1) * (z2 - 1) / ((1 + z2) * (1 + z2));
    return a * a + vw2 - r * r;
}

}  // namespace qmarg
