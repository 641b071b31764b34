/*
   Copyright 2026 The ga2 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GA2_DYNAMICS_HPP
#define GA2_DYNAMICS_HPP

#include <cstdint>
#include <thread>

#include "symmetry.hpp"

namespace ga2 {

/// Permutation of F_p^2 induced by an automorphism; point (x, y) lives at
/// index x + p*y.
struct PermTable {
    unsigned long p = 0;
    std::vector<std::uint32_t> images;

    std::size_t size() const noexcept { return images.size(); }
};

namespace detail {

inline void require_prime_field(const FieldCtx& c, const char* who) {
    if (!c.is_prime_field())
        throw NotFiniteField(std::string(who) + " needs a prime field");
}

inline std::uint32_t point_index(unsigned long p, const Vec2& pt) {
    unsigned long x = pt.x.value().get_num().get_ui();
    unsigned long y = pt.y.value().get_num().get_ui();
    return static_cast<std::uint32_t>(x + p * y);
}

inline Vec2 index_point(const FieldCtx& c, unsigned long p, std::uint32_t idx) {
    return {Scalar(c, static_cast<long>(idx % p)), Scalar(c, static_cast<long>(idx / p))};
}

/// Evaluate f at every point, partitioned across workers by index range;
/// each worker writes a disjoint slice, so the merge is a no-op.
inline std::vector<std::uint32_t> evaluate_table(const PolyMap& f, unsigned long p,
                                                 unsigned threads) {
    const FieldCtx& c = f.ctx();
    std::size_t n = static_cast<std::size_t>(p) * p;
    std::vector<std::uint32_t> images(n);
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            images[i] = point_index(
                p, apply(f, index_point(c, p, static_cast<std::uint32_t>(i))));
    };
    if (threads <= 1 || n < 256) {
        worker(0, n);
        return images;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
    return images;
}

}  // namespace detail

/// Table of f on all p^2 points. f must be an automorphism over F_p;
/// bijectivity of the resulting table is asserted.
inline PermTable induced_permutation(const PolyMap& f, unsigned threads = 1) {
    detail::require_prime_field(f.ctx(), "induced_permutation");
    decompose(f);  // NotAnAutomorphism if the map is not invertible
    unsigned long p = f.ctx().characteristic();
    PermTable t{p, detail::evaluate_table(f, p, threads)};
    std::vector<bool> seen(t.size(), false);
    for (std::uint32_t im : t.images) {
        if (im >= t.size() || seen[im]) throw InternalError("table is not a bijection");
        seen[im] = true;
    }
    return t;
}

/// Sorted multiset of cycle lengths plus the fixed-point count.
struct CycleStats {
    std::map<unsigned long, unsigned long> length_counts;
    unsigned long fixed_point_count = 0;

    unsigned long total_points() const {
        unsigned long s = 0;
        for (const auto& [len, n] : length_counts) s += len * n;
        return s;
    }

    bool operator==(const CycleStats& o) const {
        return length_counts == o.length_counts && fixed_point_count == o.fixed_point_count;
    }
};

namespace detail {

/// Cycle decomposition: id of the cycle containing each point, plus the
/// list of cycles as point sequences in orbit order.
struct CycleDecomposition {
    std::vector<std::uint32_t> cycle_of;
    std::vector<std::vector<std::uint32_t>> cycles;
};

inline CycleDecomposition decompose_cycles(const PermTable& t) {
    CycleDecomposition d;
    d.cycle_of.assign(t.size(), UINT32_MAX);
    for (std::uint32_t start = 0; start < t.size(); ++start) {
        if (d.cycle_of[start] != UINT32_MAX) continue;
        std::uint32_t id = static_cast<std::uint32_t>(d.cycles.size());
        std::vector<std::uint32_t> orbit;
        std::uint32_t x = start;
        do {
            d.cycle_of[x] = id;
            orbit.push_back(x);
            x = t.images[x];
        } while (x != start);
        d.cycles.push_back(std::move(orbit));
    }
    return d;
}

}  // namespace detail

inline CycleStats cycle_statistics(const PermTable& t) {
    CycleStats s;
    for (const auto& orbit : detail::decompose_cycles(t).cycles) {
        ++s.length_counts[orbit.size()];
        if (orbit.size() == 1) ++s.fixed_point_count;
    }
    return s;
}

/// All points of F_p^2 fixed by f, by exhaustive scan.
inline std::vector<Vec2> fixed_points_fp(const PolyMap& f) {
    detail::require_prime_field(f.ctx(), "fixed_points_fp");
    const FieldCtx& c = f.ctx();
    unsigned long p = c.characteristic();
    std::vector<Vec2> out;
    for (unsigned long y = 0; y < p; ++y)
        for (unsigned long x = 0; x < p; ++x) {
            Vec2 pt{Scalar(c, static_cast<long>(x)), Scalar(c, static_cast<long>(y))};
            if (apply(f, pt) == pt) out.push_back(pt);
        }
    return out;
}

struct CycleRecord {
    unsigned long length = 0;
    bool r_invariant = false;
    unsigned long symmetric_points = 0;  // points of the cycle fixed by r
};

struct CyclePairingReport {
    CycleStats stats;
    unsigned long r_invariant_cycles = 0;
    std::vector<CycleRecord> cycles;
};

/// For a verified reversor r of f over F_p, every f-cycle maps under r to
/// an f-cycle of equal length. Reports the histogram, the count of
/// r-invariant cycles, and the symmetric points per cycle.
inline CyclePairingReport reversor_cycle_pairing(const PolyMap& f, const PolyMap& r,
                                                 unsigned threads = 1) {
    detail::require_prime_field(f.ctx(), "reversor_cycle_pairing");
    if (!is_reversor(f, r)) throw ReversorCheckFailed("r is not a reversor of f");
    PermTable tf = induced_permutation(f, threads);
    PermTable tr = induced_permutation(r, threads);
    auto dec = detail::decompose_cycles(tf);

    CyclePairingReport rep;
    rep.stats = cycle_statistics(tf);
    for (const auto& orbit : dec.cycles) {
        std::uint32_t target = dec.cycle_of[tr.images[orbit.front()]];
        if (dec.cycles[target].size() != orbit.size())
            throw InternalError("reversor image cycle has different length");
        CycleRecord rec;
        rec.length = orbit.size();
        rec.r_invariant = target == dec.cycle_of[orbit.front()];
        for (std::uint32_t x : orbit) {
            if (dec.cycle_of[tr.images[x]] != target)
                throw InternalError("reversor image is not a single cycle");
            if (tr.images[x] == x) ++rec.symmetric_points;
        }
        if (rec.r_invariant) ++rep.r_invariant_cycles;
        rep.cycles.push_back(rec);
    }
    return rep;
}

/// For a verified symmetry s of f over F_p, s maps every f-cycle onto an
/// f-cycle of equal length preserving the cyclic order; verified
/// exhaustively.
inline bool symmetry_orbit_check(const PolyMap& f, const PolyMap& s, unsigned threads = 1) {
    detail::require_prime_field(f.ctx(), "symmetry_orbit_check");
    if (!is_symmetry(f, s)) throw SymmetryCheckFailed("s is not a symmetry of f");
    PermTable tf = induced_permutation(f, threads);
    PermTable ts = induced_permutation(s, threads);
    auto dec = detail::decompose_cycles(tf);
    for (std::size_t x = 0; x < tf.size(); ++x)
        if (ts.images[tf.images[x]] != tf.images[ts.images[x]]) return false;
    for (const auto& orbit : dec.cycles)
        if (dec.cycles[dec.cycle_of[ts.images[orbit.front()]]].size() != orbit.size())
            return false;
    return true;
}

}  // namespace ga2

#endif  // GA2_DYNAMICS_HPP
