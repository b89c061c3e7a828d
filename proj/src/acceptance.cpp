#include "ctrlk/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "ctrlk/functors.hpp"
#include "ctrlk/reps.hpp"
#include "ctrlk/squeeze.hpp"
#include "ctrlk/vanish.hpp"
#include "ctrlk/witness.hpp"

namespace ctrlk {

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

Rational rand_rational(std::mt19937& rng, long lo, long hi, long max_den) {
    std::uniform_int_distribution<long> num(lo, hi), den(1, max_den);
    return Rational(num(rng), den(rng));
}

Matrix<Rational> rand_block(std::mt19937& rng, int rows, int cols) {
    Matrix<Rational> m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::uniform_int_distribution<long> entry(-3, 3);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Rational(entry(rng));
    return m;
}

Matrix<Rational> rand_invertible(std::mt19937& rng, int n) {
    for (;;) {
        Matrix<Rational> m = rand_block(rng, n, n);
        if (!det(m).is_zero()) return m;
    }
}

LaurentPoly rand_laurent(std::mt19937& rng, long max_exp) {
    std::uniform_int_distribution<int> terms(0, 3);
    std::uniform_int_distribution<long> exp(-max_exp, max_exp);
    LaurentPoly p;
    int n = terms(rng);
    for (int i = 0; i < n; ++i) p += LaurentPoly::monomial(rand_rational(rng, -5, 5, 5), exp(rng));
    return p;
}

GeoModule rand_module(std::mt19937& rng, Group group, int max_points, int max_rank,
                      int max_height) {
    std::uniform_int_distribution<int> npts(1, max_points), rank(1, max_rank),
        height(1, max_height);
    std::uniform_int_distribution<long> den(1, 12);
    GeoModule m(group);
    int n = npts(rng);
    for (int i = 0; i < n; ++i) {
        long d = den(rng);
        std::uniform_int_distribution<long> num(0, d - 1);
        Point p{0, Rational(num(rng), d), Rational(height(rng))};
        if (m.rank_at(p) == 0) m.add_orbit(p, rank(rng));
    }
    return m;
}

GeoModule rand_interval_module(std::mt19937& rng, int max_points, int max_rank, int max_height) {
    std::uniform_int_distribution<int> npts(1, max_points), rank(1, max_rank),
        height(1, max_height);
    std::uniform_int_distribution<long> den(2, 12);
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

GeoMorphism rand_morphism(std::mt19937& rng, const GeoModule& src, const GeoModule& tgt,
                          int max_blocks, long max_reach) {
    std::uniform_int_distribution<long> reach(-max_reach, max_reach);
    std::uniform_int_distribution<int> flip(0, 1);
    std::vector<std::pair<Point, int>> s(src.orbit_data().begin(), src.orbit_data().end());
    std::vector<std::pair<Point, int>> t(tgt.orbit_data().begin(), tgt.orbit_data().end());
    GeoMorphism f(src, tgt);
    if (s.empty() || t.empty()) return f;
    std::uniform_int_distribution<std::size_t> si(0, s.size() - 1), ti(0, t.size() - 1);
    std::uniform_int_distribution<int> nblocks(0, max_blocks);
    int n = nblocks(rng);
    for (int i = 0; i < n; ++i) {
        auto [sp, srank] = s[si(rng)];
        auto [tp, trank] = t[ti(rng)];
        GroupElem g{reach(rng), src.group() == Group::InfiniteDihedral ? flip(rng) : 0};
        f.add_block(sp, apply(src.group(), g, tp), rand_block(rng, trank, srank));
    }
    return f;
}

SubspaceSpec rand_periodic_spec(std::mt19937& rng) {
    std::uniform_int_distribution<int> nboxes(0, 3), open(0, 1);
    std::uniform_int_distribution<long> sixth(0, 6);
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

std::vector<SubspaceSpec> rand_partition(std::mt19937& rng, int parts) {
    std::uniform_int_distribution<int> which(0, parts - 1);
    std::vector<std::vector<SubspaceBox>> groups(static_cast<std::size_t>(parts));
    for (long k = 0; k < 6; ++k) {
        SubspaceBox box;
        box.x_lo = Rational(k, 6);
        box.x_hi = Rational(k + 1, 6);
        box.x_hi_closed = false;
        groups[static_cast<std::size_t>(which(rng))].push_back(box);
    }
    std::vector<SubspaceSpec> out;
    for (auto& g : groups) out.emplace_back(std::move(g), true);
    return out;
}

std::vector<SubspaceSpec> symmetric_partition(std::mt19937& rng) {
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

const IntervalSpec I0{Rational(0)};

// --- criteria ---------------------------------------------------------

void criterion_xi(std::string& detail) {
    for (int n = 2; n <= 40; ++n) {
        RepBundle b = xi_rep(n);
        GeoMorphism id = GeoMorphism::identity(b.fwd.source());
        expect(compose(b.fwd, b.inv) == id, "xi composition fails at n=" + std::to_string(n));
        expect(compose(b.inv, b.fwd) == id,
               "xi reverse composition fails at n=" + std::to_string(n));
        expect(b.fwd_sizes.size == Rational(1, n), "xi size at n=" + std::to_string(n));
        expect(b.inv_sizes.size == Rational(1, n), "xi inverse size at n=" + std::to_string(n));
        Matrix<LaurentPoly> u = to_laurent_matrix(b.fwd);
        expect(det(u, n + 1) == LaurentPoly::t(1), "xi determinant at n=" + std::to_string(n));
        Matrix<LaurentPoly> nu_inv = Matrix<LaurentPoly>::identity(static_cast<std::size_t>(n));
        nu_inv.at(0, 0) = LaurentPoly::t(-1);
        expect(b.witness && verify_witness(*b.witness, u * nu_inv) && !b.witness->has_residual(),
               "xi witness at n=" + std::to_string(n));
    }
    detail = "n = 2..40: sizes 1/n, two-sided inverses, det t, witnesses verified";
}

void criterion_size_calculus(std::string& detail) {
    std::mt19937 rng(90210);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + iter % 6;
        Matrix<LaurentPoly> a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = rand_laurent(rng, 4);
        expect(matrix_size(a, n) == grid_morphism(a, n).sizes().size,
               "distance-matrix size disagrees with the geometric size, iteration " +
                   std::to_string(iter));
    }
    std::uniform_int_distribution<int> bn(2, 4), bm(1, 4);
    for (int iter = 0; iter < 50; ++iter) {
        int n = bn(rng), m = bm(rng);
        Matrix<Rational> b = rand_invertible(rng, n);
        Matrix<Rational> stab = Matrix<Rational>::identity(static_cast<std::size_t>(n + m));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                stab.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    b.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        expect(matrix_size(to_laurent_entries(stab), n + m) ==
                   Rational(n, n + m) * matrix_size(to_laurent_entries(b), n),
               "stabilization scaling fails at iteration " + std::to_string(iter));
    }
    detail = "200 random Laurent matrices (n <= 6) match both size routes; 50 stabilizations "
             "scale by n/(n+m) exactly";
}

void criterion_squeezing(std::string& detail) {
    std::mt19937 rng(90311);
    const LayerSchedule sched{Rational(1)};
    const Rational lim(7999, 1000);
    for (int iter = 0; iter < 50; ++iter) {
        GeoModule a = rand_interval_module(rng, 5, 3, 2);
        GeoModule b = rand_interval_module(rng, 5, 3, 2);
        GeoModule c = rand_interval_module(rng, 5, 3, 2);
        GeoMorphism f = rand_morphism(rng, a, b, 5, 0);
        GeoMorphism g = rand_morphism(rng, b, c, 5, 0);
        int n = 1 + iter % 6;
        expect(squeeze_layer(compose(g, f), I0, sched, n) ==
                   compose(squeeze_layer(g, I0, sched, n), squeeze_layer(f, I0, sched, n)),
               "functoriality fails at iteration " + std::to_string(iter));
        expect(squeeze_layer(f, I0, sched, n).sizes().hsize == f.sizes().hsize / Rational(n),
               "contraction is not exactly 1/n at iteration " + std::to_string(iter));
        auto fp = flasque_iso(a, I0, 8);
        expect(compose(fp.fwd, fp.bwd) == LayerMorphism::identity(fp.stack),
               "flasque forward-backward fails at iteration " + std::to_string(iter));
        expect(compose(fp.bwd, fp.fwd).below(lim) ==
                   LayerMorphism::identity(fp.stack_plus).below(lim),
               "flasque backward-forward fails below the truncation at iteration " +
                   std::to_string(iter));
    }
    detail = "50 random interval morphisms: functorial layers, exact 1/n contraction, "
             "two-sided flasque identity below t = 8";
}

void criterion_lemma_identity(std::string& detail) {
    std::mt19937 rng(90412);
    SubspaceSpec u = subspace_U(I0);
    Window w;
    w.x_lo = Rational(-2);
    w.x_hi = Rational(2);
    w.t_hi = Rational(8);
    int done = 0;
    while (done < 25) {
        GeoModule a = rand_interval_module(rng, 5, 2, 1);
        GeoMorphism gamma = GeoMorphism::zero(a, a);
        for (const auto& [rep, rank] : a.orbit_data())
            if (u.contains(rep))
                gamma.add_block(rep, rep,
                                Matrix<Rational>::identity(static_cast<std::size_t>(rank)));
        GeoMorphism junk = rand_morphism(rng, a, a, 5, 0);
        for (const auto& [key, m] : junk.blocks())
            if (!u.contains(key.first) && !u.contains(key.second))
                gamma.add_block(key.first, key.second, m);
        if (!is_identity_on(gamma, u)) continue;
        ++done;
        expect(lemma_identity_check(gamma, I0, LayerSchedule{Rational(1)}, 8, w),
               "squeezed layer is not the identity on V, sample " + std::to_string(done));
    }
    detail = "25 random U-identities: every layer n <= 8 is the identity on V";
}

void criterion_vanishing(std::string& detail) {
    Window w;
    w.x_lo = Rational(-2);
    w.x_hi = Rational(2);
    w.t_hi = Rational(10);

    RepBundle b = xi_rep(31);
    Rational off = default_preshift(b.fwd.source());
    GeoMorphism alpha = b.fwd.shifted(off), alpha_inv = b.inv.shifted(off);
    expect(alpha.sizes().hsize == Rational(1, 31), "shifted input size");
    VanishReport rep = verify_vanishing(alpha, alpha_inv, I0, 16, w);
    expect(rep.beta_matches_closed_form, "beta product differs from the closed form");
    expect(rep.beta_restricts, "beta does not restrict to the half-shifted cells");
    expect(rep.beta_identity_on_v, "beta is not the identity on V");
    expect(rep.eta_mu_invertible, "eta or mu fails to invert");
    expect(rep.counterexamples.empty(), "counterexamples recorded");

    GeoModule single(Group::InfiniteCyclic);
    single.add_orbit({0, Rational(1, 4), Rational(1)}, 1);
    GeoMorphism id = GeoMorphism::identity(single);
    VanishReport rid = verify_vanishing(id, id, I0, 16, w);
    expect(rid.all_ok(), "identity pipeline fails");
    LayerMorphism beta_id =
        build_beta_product(id, id, I0, LayerSchedule{Rational(1)}, 16);
    expect(beta_id == LayerMorphism::identity(squeeze_total(single, I0,
                                                            LayerSchedule{Rational(1)}, 16)),
           "identity input does not give the identity beta");
    detail = "shifted 1/31 rotation: product and closed-form betas agree on t <= 10, "
             "restrict to the half-shifted cells, identity on V; identity input gives beta = id";
}

void criterion_dihedral(std::string& detail) {
    RepBundle s = s_rep();
    expect(s.fwd_sizes.size == Rational(0), "reflection representative has nonzero size");
    expect(compose(s.fwd, s.fwd) == GeoMorphism::identity(s.fwd.source()),
           "reflection representative is not an involution");
    Matrix<DihedralElem> us = to_dihedral_matrix(s.fwd);
    expect(us.rows() == 1 && us.at(0, 0) == DihedralElem::s(),
           "reflection does not forget to (s)");

    for (int n = 1; n <= 20; ++n) {
        RepBundle r = r_rep(n);
        GeoMorphism id = GeoMorphism::identity(r.fwd.source());
        expect(r.fwd_sizes.size == Rational(1, n), "rotation size at n=" + std::to_string(n));
        expect(r.inv_sizes.size == Rational(1, n),
               "rotation inverse size at n=" + std::to_string(n));
        expect(compose(r.fwd, r.inv) == id && compose(r.inv, r.fwd) == id,
               "rotation inverses at n=" + std::to_string(n));
    }

    std::mt19937 rng(90615);
    std::uniform_int_distribution<long> shift(-6, 6);
    std::uniform_int_distribution<int> flip(0, 1);
    std::uniform_int_distribution<long> xnum(-12, 12);
    std::uniform_int_distribution<long> xden(1, 6);
    for (int iter = 0; iter < 500; ++iter) {
        DihedralWord w1{shift(rng), flip(rng)}, w2{shift(rng), flip(rng)};
        // multiplication law agrees with the action on the line
        Point p{flip(rng), Rational(xnum(rng), xden(rng)), Rational(1)};
        GroupElem g1{w1.m, w1.n}, g2{w2.m, w2.n};
        DihedralWord w12 = w1 * w2;
        expect(apply(Group::InfiniteDihedral, {w12.m, w12.n}, p) ==
                   apply(Group::InfiniteDihedral, g1, apply(Group::InfiniteDihedral, g2, p)),
               "word multiplication disagrees with the action, iteration " +
                   std::to_string(iter));
        // ring associativity on random three-term elements
        DihedralElem a, b, c;
        for (int k = 0; k < 3; ++k) {
            a += DihedralElem::term(rand_rational(rng, -4, 4, 4), {shift(rng), flip(rng)});
            b += DihedralElem::term(rand_rational(rng, -4, 4, 4), {shift(rng), flip(rng)});
            c += DihedralElem::term(rand_rational(rng, -4, 4, 4), {shift(rng), flip(rng)});
        }
        expect((a * b) * c == a * (b * c), "group-ring associativity, iteration " +
                                               std::to_string(iter));
        // defining relations
        DihedralElem ss = DihedralElem::s() * DihedralElem::s();
        DihedralElem rs = DihedralElem::r() * DihedralElem::s();
        expect(ss == DihedralElem(1) && rs * rs == DihedralElem(1), "defining relations");
    }
    detail = "reflection involution of size 0 forgetting to (s); rotations sized 1/n for "
             "n <= 20; 500 random group-ring products respect the presentation";
}

void criterion_achic(std::string& detail) {
    std::mt19937 rng(90713);
    std::uniform_int_distribution<long> kk(-3, 3);
    for (int iter = 0; iter < 20; ++iter) {
        long k = kk(rng);
        Matrix<Rational> m = rand_invertible(rng, 3);
        Rational eps = iter % 2 == 0 ? Rational(1, 10) : Rational(1, 50);
        RepBundle b = squeeze_class(k, m, eps);
        expect(b.fwd_sizes.size < eps && b.inv_sizes.size < eps,
               "class representative exceeds the size budget, iteration " +
                   std::to_string(iter));
        GeoMorphism id = GeoMorphism::identity(b.fwd.source());
        expect(compose(b.fwd, b.inv) == id && compose(b.inv, b.fwd) == id,
               "class representative inverses, iteration " + std::to_string(iter));
        int dim = static_cast<int>(b.fwd.source().orbit_data().size());
        expect(det(to_laurent_matrix(b.fwd), dim + 1) == LaurentPoly::monomial(det(m), k),
               "determinant certificate fails, iteration " + std::to_string(iter));
    }
    detail = "20 random t^k [M] classes (k in [-3,3], M in GL3, eps in {1/10, 1/50}): both "
             "sizes below eps, determinant t^k det(M)";
}

void criterion_restriction(std::string& detail) {
    std::mt19937 rng(90814);
    for (int iter = 0; iter < 100; ++iter) {
        const bool dihedral = iter % 3 == 0;
        Group group = dihedral ? Group::InfiniteDihedral : Group::InfiniteCyclic;
        GeoModule a = rand_module(rng, group, 3, 2, 2);
        GeoModule b = rand_module(rng, group, 3, 2, 2);
        GeoModule c = rand_module(rng, group, 3, 2, 2);
        GeoMorphism alpha = rand_morphism(rng, a, b, 4, 2);
        GeoMorphism alpha2 = rand_morphism(rng, a, b, 4, 2);
        GeoMorphism beta = rand_morphism(rng, b, c, 4, 2);
        auto parts = dihedral ? symmetric_partition(rng) : rand_partition(rng, 3);
        SubspaceSpec y = dihedral ? parts[iter % 2] : rand_periodic_spec(rng);
        SubspaceSpec z = dihedral ? parts[(iter + 1) % 2] : rand_periodic_spec(rng);

        expect(restrict_block(alpha + alpha2, y, z) ==
                   restrict_block(alpha, y, z) + restrict_block(alpha2, y, z),
               "restriction additivity, iteration " + std::to_string(iter));

        GeoMorphism whole = GeoMorphism::zero(a, b);
        for (const auto& yi : parts)
            for (const auto& zj : parts) whole += restrict_block(alpha, yi, zj);
        expect(whole == alpha, "partition decomposition, iteration " + std::to_string(iter));

        GeoMorphism sum = GeoMorphism::zero(a, c);
        for (const auto& x : parts)
            sum += compose(restrict_block(beta, x, SubspaceSpec::everything()),
                           restrict_block(alpha, SubspaceSpec::everything(), x));
        expect(compose(beta, alpha) == sum,
               "composition decomposition, iteration " + std::to_string(iter));

        // identity / zero composition remark
        GeoMorphism gamma = GeoMorphism::zero(a, a);
        for (const auto& [rep, rank] : a.orbit_data())
            if (y.contains(rep))
                gamma.add_block(rep, rep,
                                Matrix<Rational>::identity(static_cast<std::size_t>(rank)));
        GeoMorphism junk = rand_morphism(rng, a, a, 3, 1);
        for (const auto& [key, m] : junk.blocks())
            if (!y.contains(key.first) && !y.contains(key.second))
                gamma.add_block(key.first, key.second, m);
        GeoMorphism ba = rand_morphism(rng, a, c, 4, 2);
        if (is_identity_on(gamma, y))
            expect(restrict_block(compose(ba, gamma), y, z) == restrict_block(ba, y, z),
                   "identity-on composition remark, iteration " + std::to_string(iter));
        GeoMorphism zero_on_y = GeoMorphism::zero(a, a);
        for (const auto& [key, m] : junk.blocks())
            if (!y.contains(key.first) && !y.contains(key.second))
                zero_on_y.add_block(key.first, key.second, m);
        expect(restrict_block(compose(ba, zero_on_y), y, z).is_zero(),
               "zero-on composition remark, iteration " + std::to_string(iter));
    }
    detail = "100 random window morphisms satisfy additivity, partition and composition "
             "decompositions, and the identity/zero composition rules";
}

CriterionResult run_one(int index, const std::string& name,
                        const std::function<void(std::string&)>& body) {
    CriterionResult r;
    r.index = index;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
        body(r.detail);
        r.pass = true;
    } catch (const Failure& f) {
        r.pass = false;
        r.detail = f.what;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> out;
    out.push_back(run_one(1, "grid rotation representatives", criterion_xi));
    out.push_back(run_one(2, "matrix size calculus", criterion_size_calculus));
    out.push_back(run_one(3, "squeezing functors", criterion_squeezing));
    out.push_back(run_one(4, "band identity lemma", criterion_lemma_identity));
    out.push_back(run_one(5, "vanishing pipeline", criterion_vanishing));
    out.push_back(run_one(6, "dihedral representatives", criterion_dihedral));
    out.push_back(run_one(7, "class squeezer", criterion_achic));
    out.push_back(run_one(8, "restriction calculus", criterion_restriction));
    return out;
}

} // namespace ctrlk
