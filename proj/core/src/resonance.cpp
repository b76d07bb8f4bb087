#include "resonant/resonance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "resonant/errors.hpp"

namespace resonant {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "unknown";
    }
}

void for_each_exponent(unsigned d, unsigned bound, const std::function<void(std::span<const unsigned>)>& fn) {
    std::vector<unsigned> k(d, 0);
    // graded enumeration: all compositions of s into d parts, s = 1..bound
    for (unsigned s = 1; s <= bound; ++s) {
        std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
            if (pos + 1 == d) {
                k[pos] = left;
                fn(k);
                return;
            }
            for (unsigned v = left; v != static_cast<unsigned>(-1); --v) {
                k[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, s);
    }
}

namespace {

using IVec = std::vector<unsigned>;

bool leq_componentwise(const IVec& a, const IVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

unsigned degree(const IVec& a) { return std::accumulate(a.begin(), a.end(), 0u); }

struct GradedLexLess {
    bool operator()(const IVec& a, const IVec& b) const {
        unsigned da = degree(a), db = degree(b);
        if (da != db) return da < db;
        return a > b;  // within a degree: lexicographically larger first entry first
    }
};

/// Rational kernel of the m x |cols| submatrix of M (columns `cols`).
/// Returns the kernel dimension; if it is 1, `generator` holds a nonzero
/// kernel vector indexed like `cols`.
unsigned kernel_on_support(const std::vector<std::vector<Rational>>& M, const std::vector<unsigned>& cols,
                           std::vector<Rational>& generator) {
    const unsigned rows = static_cast<unsigned>(M.size());
    const unsigned n = static_cast<unsigned>(cols.size());
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(n));
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < n; ++c) A[r][c] = M[r][cols[c]];
    // Gauss-Jordan
    std::vector<int> pivot_col_of_row(rows, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < n && rank < rows; ++c) {
        unsigned sel = rank;
        while (sel < rows && A[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[rank]);
        Rational inv = A[rank][c];
        for (unsigned cc = 0; cc < n; ++cc) A[rank][cc] /= inv;
        for (unsigned r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0) continue;
            Rational f = A[r][c];
            for (unsigned cc = 0; cc < n; ++cc) A[r][cc] -= f * A[rank][cc];
        }
        pivot_col_of_row[rank] = static_cast<int>(c);
        ++rank;
    }
    const unsigned nullity = n - rank;
    if (nullity == 1) {
        // free column = the one that is no pivot
        std::vector<bool> is_pivot(n, false);
        for (unsigned r = 0; r < rank; ++r) is_pivot[pivot_col_of_row[r]] = true;
        unsigned free_c = 0;
        while (free_c < n && is_pivot[free_c]) ++free_c;
        generator.assign(n, Rational(0));
        generator[free_c] = 1;
        for (unsigned r = 0; r < rank; ++r) generator[pivot_col_of_row[r]] = -A[r][free_c];
    }
    return nullity;
}

enum class RayKind { not_a_ray, ray, too_large };

RayKind primitive_positive(const std::vector<Rational>& v, IVec& out) {
    // all entries must share one sign and be nonzero
    int sign = 0;
    for (const auto& q : v) {
        if (q == 0) return RayKind::not_a_ray;
        int s = q > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return RayKind::not_a_ray;
    }
    mp::cpp_int lcm_den = 1;
    for (const auto& q : v) lcm_den = lcm(lcm_den, denominator(q));
    std::vector<mp::cpp_int> ints;
    ints.reserve(v.size());
    for (const auto& q : v) ints.push_back(numerator(q) * (lcm_den / denominator(q)) * sign);
    mp::cpp_int g = 0;
    for (const auto& z : ints) g = gcd(g, z);
    out.assign(v.size(), 0);
    for (size_t i = 0; i < v.size(); ++i) {
        mp::cpp_int e = ints[i] / g;
        if (e > 1000000) return RayKind::too_large;  // a real ray, far beyond any usable bound
        out[i] = static_cast<unsigned>(e);
    }
    return RayKind::ray;
}

struct RayScan {
    std::vector<IVec> rays;
    bool overflow = false;  // some extreme ray exceeded the representable range
};

/// Extreme rays of {z >= 0 : M z = 0} by minimal-support enumeration.
RayScan extreme_rays(const std::vector<std::vector<Rational>>& M, unsigned d) {
    RayScan scan;
    std::vector<unsigned> found_supports;  // bitmasks
    for (unsigned size = 1; size <= d; ++size) {
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
            if (__builtin_popcount(mask) != static_cast<int>(size)) continue;
            bool dominated = false;
            for (unsigned s : found_supports)
                if ((s & mask) == s) dominated = true;
            if (dominated) continue;
            std::vector<unsigned> cols;
            for (unsigned i = 0; i < d; ++i)
                if (mask & (1u << i)) cols.push_back(i);
            std::vector<Rational> gen;
            if (kernel_on_support(M, cols, gen) != 1) continue;
            IVec prim;
            RayKind kind = primitive_positive(gen, prim);
            if (kind == RayKind::not_a_ray) continue;
            found_supports.push_back(mask);
            if (kind == RayKind::too_large) {
                scan.overflow = true;
                continue;
            }
            IVec ray(d, 0);
            for (size_t c = 0; c < cols.size(); ++c) ray[cols[c]] = prim[c];
            scan.rays.push_back(std::move(ray));
        }
    }
    std::sort(scan.rays.begin(), scan.rays.end(), GradedLexLess());
    return scan;
}

}  // namespace

ResonanceBasis hilbert_basis(const FrequencyVector& freq, unsigned deg_bound) {
    if (deg_bound < 1) throw PreconditionError("deg_bound must be at least 1");
    if (freq.d > 16) throw PreconditionError("dimension too large for bounded enumeration");
    ResonanceBasis basis;
    basis.deg_bound = deg_bound;

    // all invariant exponents up to the bound
    std::vector<IVec> candidates;
    for_each_exponent(freq.d, deg_bound, [&](std::span<const unsigned> k) {
        if (freq.invariant_exponent(k)) candidates.emplace_back(k.begin(), k.end());
    });
    std::sort(candidates.begin(), candidates.end(), GradedLexLess());
    std::set<IVec> candidate_set(candidates.begin(), candidates.end());

    // minimal generating set: drop K that splits as C + (K-C) inside the monoid
    for (const auto& K : candidates) {
        bool reducible = false;
        for (const auto& C : candidates) {
            if (degree(C) >= degree(K)) break;
            if (!leq_componentwise(C, K)) continue;
            IVec rest(K.size());
            for (size_t i = 0; i < K.size(); ++i) rest[i] = K[i] - C[i];
            if (degree(rest) == 0) continue;
            if (candidate_set.contains(rest)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.generators.push_back(K);
    }

    // completeness certificate via the extreme rays of the resonance cone
    std::vector<std::vector<Rational>> M(freq.m, std::vector<Rational>(freq.d));
    for (unsigned j = 0; j < freq.m; ++j)
        for (unsigned i = 0; i < freq.d; ++i) M[j][i] = freq.l_exact[i][j];
    RayScan scan = extreme_rays(M, freq.d);
    basis.extreme_rays = scan.rays;
    unsigned ray_degree_sum = 0;
    bool rays_seen = !scan.overflow;
    for (const auto& ray : basis.extreme_rays) {
        ray_degree_sum += degree(ray);
        bool found = false;
        for (const auto& g : basis.generators)
            if (g == ray && 2 * degree(g) <= deg_bound) found = true;
        if (!found) rays_seen = false;
    }
    basis.complete = rays_seen && ray_degree_sum <= deg_bound;
    return basis;
}

unsigned count_representations(std::span<const unsigned> target,
                               const std::vector<std::vector<unsigned>>& generators, unsigned cap,
                               std::vector<std::vector<unsigned>>* found) {
    unsigned count = 0;
    std::vector<unsigned> combo(generators.size(), 0);
    IVec rest(target.begin(), target.end());
    std::function<void(unsigned)> rec = [&](unsigned idx) {
        if (count >= cap) return;
        if (degree(rest) == 0) {
            ++count;
            if (found && found->size() < 2) found->push_back(combo);
            return;
        }
        if (idx == generators.size()) return;
        const auto& R = generators[idx];
        unsigned max_mult = degree(rest);
        for (size_t i = 0; i < R.size(); ++i)
            if (R[i] > 0) max_mult = std::min(max_mult, rest[i] / R[i]);
        for (unsigned mlt = max_mult + 1; mlt-- > 0;) {
            for (size_t i = 0; i < R.size(); ++i) rest[i] -= mlt * R[i];
            combo[idx] = mlt;
            rec(idx + 1);
            for (size_t i = 0; i < R.size(); ++i) rest[i] += mlt * R[i];
            combo[idx] = 0;
            if (count >= cap) return;
        }
    };
    rec(0);
    return count;
}

Verdict check_P1(const FrequencyVector& freq, ResonanceBasis& basis, unsigned deg_bound) {
    basis.p1_witness.reset();
    Verdict out = basis.complete ? Verdict::holds : Verdict::unknown;
    for_each_exponent(freq.d, deg_bound, [&](std::span<const unsigned> k) {
        if (out == Verdict::fails) return;
        if (!freq.invariant_exponent(k)) return;
        std::vector<std::vector<unsigned>> combos;
        if (count_representations(k, basis.generators, 2, &combos) >= 2) {
            out = Verdict::fails;
            P1Witness w;
            w.j.assign(k.begin(), k.end());
            w.combo_a = combos[0];
            w.combo_b = combos[1];
            basis.p1_witness = std::move(w);
        }
    });
    basis.p1 = out;
    return out;
}

Verdict check_P2(const FrequencyVector& freq, ResonanceBasis& basis, unsigned deg_bound) {
    basis.p2_witness.reset();
    Verdict out = basis.complete ? Verdict::holds : Verdict::unknown;
    for_each_exponent(freq.d, deg_bound, [&](std::span<const unsigned> k) {
        if (out == Verdict::fails) return;
        for (unsigned i = 0; i < freq.d && out != Verdict::fails; ++i) {
            if (!freq.resonant_field_exponent(k, i)) continue;
            P2Witness w;
            w.k.assign(k.begin(), k.end());
            w.direction = i;
            if (k[i] == 0) {
                w.representable = false;
                out = Verdict::fails;
                basis.p2_witness = std::move(w);
                break;
            }
            IVec rest(k.begin(), k.end());
            rest[i] -= 1;
            std::vector<std::vector<unsigned>> combos;
            unsigned reps = count_representations(rest, basis.generators, 2, &combos);
            if (reps == 1) continue;
            w.representable = reps > 0;
            if (reps >= 2) {
                w.combo_a = combos[0];
                w.combo_b = combos[1];
            }
            out = Verdict::fails;
            basis.p2_witness = std::move(w);
        }
    });
    basis.p2 = out;
    return out;
}

}  // namespace resonant
