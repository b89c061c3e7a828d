#pragma once

// Shared randomized-input helpers for the test suites. All generators take
// an explicit engine so every suite runs with fixed seeds.

#include <random>
#include <vector>

#include "ctrlk/geometry.hpp"

namespace ctrlk::testing {

inline Rational rand_rational(std::mt19937& rng, long lo = -9, long hi = 9, long max_den = 9) {
    std::uniform_int_distribution<long> num(lo, hi), den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Matrix<Rational> rand_block(std::mt19937& rng, int rows, int cols) {
    Matrix<Rational> m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::uniform_int_distribution<long> entry(-3, 3);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Rational(entry(rng));
    return m;
}

/// Module with support points of denominator <= max_den, heights integral in
/// [1, max_height], ranks in [1, max_rank].
inline GeoModule rand_module(std::mt19937& rng, Group group, int max_points, int max_rank,
                             int max_height = 1, long max_den = 12) {
    std::uniform_int_distribution<int> npts(1, max_points), rank(1, max_rank),
        height(1, max_height);
    std::uniform_int_distribution<long> num(0, max_den - 1), den(1, max_den);
    GeoModule m(group);
    int n = npts(rng);
    for (int i = 0; i < n; ++i) {
        long d = den(rng);
        Point p{0, Rational(num(rng) % d, d), Rational(height(rng))};
        if (m.rank_at(p) == 0) m.add_orbit(p, rank(rng));
    }
    return m;
}

/// Equivariant morphism with random blocks between existing support points,
/// targets translated by at most max_reach cells (and flipped for the
/// dihedral group).
inline GeoMorphism rand_morphism(std::mt19937& rng, const GeoModule& src, const GeoModule& tgt,
                                 int max_blocks, long max_reach = 2) {
    std::uniform_int_distribution<long> reach(-max_reach, max_reach);
    std::uniform_int_distribution<int> flip(0, 1);
    std::vector<std::pair<Point, int>> src_reps(src.orbit_data().begin(), src.orbit_data().end());
    std::vector<std::pair<Point, int>> tgt_reps(tgt.orbit_data().begin(), tgt.orbit_data().end());
    GeoMorphism f(src, tgt);
    if (src_reps.empty() || tgt_reps.empty()) return f;
    std::uniform_int_distribution<std::size_t> si(0, src_reps.size() - 1),
        ti(0, tgt_reps.size() - 1);
    std::uniform_int_distribution<int> nblocks(0, max_blocks);
    int n = nblocks(rng);
    for (int i = 0; i < n; ++i) {
        auto [s, srank] = src_reps[si(rng)];
        auto [q, trank] = tgt_reps[ti(rng)];
        GroupElem g{reach(rng), src.group() == Group::InfiniteDihedral ? flip(rng) : 0};
        f.add_block(s, apply(src.group(), g, q), rand_block(rng, trank, srank));
    }
    return f;
}

inline GeoMorphism rand_endo(std::mt19937& rng, const GeoModule& m, int max_blocks,
                             long max_reach = 2) {
    return rand_morphism(rng, m, m, max_blocks, max_reach);
}

/// Periodic subspace built from up to three boxes with denominator-6
/// endpoints in [0, 1].
inline SubspaceSpec rand_periodic_spec(std::mt19937& rng) {
    std::uniform_int_distribution<int> nboxes(0, 3);
    std::uniform_int_distribution<long> sixth(0, 6);
    std::uniform_int_distribution<int> open(0, 1);
    std::vector<SubspaceBox> boxes;
    int n = nboxes(rng);
    for (int i = 0; i < n; ++i) {
        long a = sixth(rng), b = sixth(rng);
        if (a > b) std::swap(a, b);
        SubspaceBox box;
        box.x_lo = Rational(a, 6);
        box.x_hi = Rational(b, 6);
        box.x_lo_closed = open(rng) == 0;
        box.x_hi_closed = open(rng) == 0;
        boxes.push_back(box);
    }
    return SubspaceSpec(std::move(boxes), true);
}

/// Module restricted to the open cell (0, 1): support strictly inside, so it
/// avoids the boundary of the standard unit interval.
inline GeoModule rand_interval_module(std::mt19937& rng, int max_points, int max_rank,
                                      int max_height = 1, long max_den = 12) {
    std::uniform_int_distribution<int> npts(1, max_points), rank(1, max_rank),
        height(1, max_height);
    std::uniform_int_distribution<long> den(2, max_den);
    GeoModule m(Group::InfiniteCyclic);
    int n = npts(rng);
    for (int i = 0; i < n; ++i) {
        long d = den(rng);
        std::uniform_int_distribution<long> num(1, d - 1);
        Point p{0, Rational(num(rng), d), Rational(height(rng))};
        if (m.rank_at(p) == 0) m.add_orbit(p, rank(rng));
    }
    return m;
}

/// Reflection-symmetric periodic subspace (single box [c, 1-c] or its open
/// complement (1-c, 1+c)), valid for the dihedral group.
inline SubspaceSpec rand_symmetric_spec(std::mt19937& rng) {
    static const long cs[4] = {1, 2, 3, 5};
    std::uniform_int_distribution<int> pick(0, 3), inner(0, 1);
    Rational c(cs[pick(rng)], 12);
    SubspaceBox box;
    if (inner(rng)) {
        box.x_lo = c;
        box.x_hi = Rational(1) - c;
    } else {
        box.x_lo = Rational(1) - c;
        box.x_hi = Rational(1) + c;
        box.x_lo_closed = box.x_hi_closed = false;
    }
    return SubspaceSpec({box}, true);
}

/// Two-piece reflection-symmetric partition of the line mod 1.
inline std::vector<SubspaceSpec> rand_symmetric_partition(std::mt19937& rng) {
    static const long cs[3] = {2, 3, 4};
    std::uniform_int_distribution<int> pick(0, 2);
    Rational c(cs[pick(rng)], 12);
    SubspaceBox inner;
    inner.x_lo = c;
    inner.x_hi = Rational(1) - c;
    SubspaceBox outer;
    outer.x_lo = Rational(1) - c;
    outer.x_hi = Rational(1) + c;
    outer.x_lo_closed = outer.x_hi_closed = false;
    std::vector<SubspaceSpec> out;
    out.emplace_back(std::vector<SubspaceBox>{inner}, true);
    out.emplace_back(std::vector<SubspaceBox>{outer}, true);
    return out;
}

/// Partition of the line (mod 1) into half-open sixths grouped into `parts`
/// periodic subspaces.
inline std::vector<SubspaceSpec> rand_partition(std::mt19937& rng, int parts) {
    std::uniform_int_distribution<int> which(0, parts - 1);
    std::vector<std::vector<SubspaceBox>> groups(static_cast<std::size_t>(parts));
    for (long k = 0; k < 6; ++k) {
        SubspaceBox box;
        box.x_lo = Rational(k, 6);
        box.x_hi = Rational(k + 1, 6);
        box.x_lo_closed = true;
        box.x_hi_closed = false;
        groups[static_cast<std::size_t>(which(rng))].push_back(box);
    }
    std::vector<SubspaceSpec> out;
    for (auto& g : groups) out.emplace_back(std::move(g), true);
    return out;
}

} // namespace ctrlk::testing
