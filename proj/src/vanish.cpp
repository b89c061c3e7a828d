#include "ctrlk/vanish.hpp"

#include <algorithm>
#include <set>

#include "ctrlk/errors.hpp"

namespace ctrlk {

namespace {

constexpr int kMaxOffendersPerFlag = 16;

void require_automorphism_pair(const GeoMorphism& alpha, const GeoMorphism& alpha_inv) {
    if (!alpha.is_endomorphism() || !alpha_inv.is_endomorphism() ||
        alpha.source() != alpha_inv.source())
        throw PreconditionError("expected an endomorphism together with its inverse");
    GeoMorphism id = GeoMorphism::identity(alpha.source());
    if (compose(alpha, alpha_inv) != id || compose(alpha_inv, alpha) != id)
        throw PreconditionError("the supplied pair is not mutually inverse");
}

void require_small(const GeoMorphism& alpha, const GeoMorphism& alpha_inv) {
    const Rational bound(1, 30);
    if (!(alpha.sizes().hsize < bound) || !(alpha_inv.sizes().hsize < bound))
        throw PreconditionError("horizontal size must be strictly below 1/30");
}

Rational max_vsize(const GeoMorphism& a, const GeoMorphism& b) {
    return max(a.sizes().vsize, b.sizes().vsize);
}

// Elementary block morphism: identity on the stack plus the given
// off-diagonal blocks.
LayerMorphism elementary(const LayerSum& stack,
                         const std::vector<std::pair<std::pair<int, int>, GeoMorphism>>& blocks,
                         bool negated) {
    LayerMorphism f = LayerMorphism::identity(stack);
    for (const auto& [key, g] : blocks) f.add_block(key.first, key.second, negated ? -g : g);
    return f;
}

} // namespace

LayerSchedule select_schedule(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                              const Rational& K, int N, const IntervalSpec& I) {
    require_automorphism_pair(alpha, alpha_inv);
    if (K < max_vsize(alpha, alpha_inv))
        throw PreconditionError("K must dominate the vertical size of the pair");

    const GeoModule& A = alpha.source();
    Rational H = A.is_empty() ? Rational(1) : A.max_height();
    LayerSchedule sched(max(Rational(1), H + Rational(5) * K));

    // Certify the choice by scanning the supports.
    GeoMorphism abar = clip(alpha, I);
    GeoMorphism abar_inv = clip(alpha_inv, I);
    if (!restricts_to_interval(abar, I))
        throw PreconditionError("module support touches the interval boundary; shift the input");
    for (int n = 1; n <= N; ++n) {
        Rational cut = sched.tau(n) - Rational(5) * K;
        Rational bound(1, 30 * static_cast<long>(n));
        for (const GeoMorphism* f : {&alpha, &alpha_inv})
            for (const auto& [key, m] : f->blocks())
                if (key.first.t >= cut && key.second.t >= cut &&
                    (key.first.x - key.second.x).abs() > bound)
                    throw PreconditionError(
                        "no affine schedule satisfies the control condition at layer " +
                        std::to_string(n));
        for (int j = 2; j < n; ++j)
            for (const GeoMorphism* f : {&abar, &abar_inv}) {
                GeoMorphism sj = squeeze_layer(*f, I, sched, j);
                for (const auto& [key, m] : sj.blocks())
                    if (key.first.t >= cut && key.second.t >= cut &&
                        (key.first.x - key.second.x).abs() > bound)
                        throw PreconditionError(
                            "no affine schedule satisfies the control condition at layer " +
                            std::to_string(n));
            }
    }
    return sched;
}

EtaMu build_eta_mu(const GeoMorphism& alpha, const GeoMorphism& alpha_inv, const IntervalSpec& I,
                   const LayerSchedule& sched, int N) {
    require_automorphism_pair(alpha, alpha_inv);
    require_small(alpha, alpha_inv);
    if (N < 2) throw UsageError("the construction needs at least two layers");
    const GeoModule& A = alpha.source();
    if (!module_avoids_boundary(A, I))
        throw PreconditionError("module support touches the interval boundary; shift the input");

    GeoMorphism abar = clip(alpha, I);
    GeoMorphism abar_inv = clip(alpha_inv, I);

    EtaMu out;
    out.stack = squeeze_total(A, I, sched, N);
    auto iso = [&](int i, int j) { return layer_iso(A, I, sched, i, j); };
    auto layer = [&](const GeoMorphism& f, int n) { return squeeze_layer(f, I, sched, n); };

    using BlockList = std::vector<std::pair<std::pair<int, int>, GeoMorphism>>;
    // eta lives on odd + even pairs (o, o+1); mu on even + odd pairs (e, e+1).
    BlockList up_iso, down_iso, up_alpha, down_alpha;         // eta pieces
    BlockList mu_up_iso, mu_down_iso, mu_up_alpha, mu_down_alpha; // mu pieces
    for (int o = 1; o + 1 <= N; o += 2) {
        const int e = o + 1;
        down_iso.push_back({{o, e}, iso(e, o)});
        up_iso.push_back({{e, o}, iso(o, e)});
        up_alpha.push_back({{e, o}, compose(iso(o, e), layer(abar_inv, o))});
        down_alpha.push_back({{o, e}, compose(iso(e, o), layer(abar, e))});
    }
    for (int e = 2; e + 1 <= N; e += 2) {
        const int o = e + 1;
        mu_down_iso.push_back({{e, o}, iso(o, e)});
        mu_up_iso.push_back({{o, e}, iso(e, o)});
        mu_up_alpha.push_back({{o, e}, compose(iso(e, o), layer(abar_inv, e))});
        mu_down_alpha.push_back({{e, o}, compose(iso(o, e), layer(abar, o))});
    }

    out.eta_factors = {
        elementary(out.stack, down_iso, false),   // id + psi^-1 above
        elementary(out.stack, up_iso, true),      // id - psi below
        elementary(out.stack, down_iso, false),
        elementary(out.stack, up_alpha, false),   // id + psi S_odd(abar_inv) below
        elementary(out.stack, down_alpha, true),  // id - psi^-1 S_even(abar) above
        elementary(out.stack, up_alpha, false),
    };
    out.mu_factors = {
        elementary(out.stack, mu_down_iso, false),
        elementary(out.stack, mu_up_iso, true),
        elementary(out.stack, mu_down_iso, false),
        elementary(out.stack, mu_up_alpha, false),
        elementary(out.stack, mu_down_alpha, true),
        elementary(out.stack, mu_up_alpha, false),
    };

    auto product = [&](const std::vector<LayerMorphism>& fs) {
        LayerMorphism p = fs.front();
        for (std::size_t i = 1; i < fs.size(); ++i) p = compose(p, fs[i]);
        return p;
    };
    auto inverse_product = [&](const BlockList* lists[6], const bool negs[6]) {
        // inverse of each factor negates its off-diagonal part; reverse order
        LayerMorphism p = LayerMorphism::identity(out.stack);
        for (int i = 5; i >= 0; --i) p = compose(p, elementary(out.stack, *lists[i], !negs[i]));
        return p;
    };

    out.eta = product(out.eta_factors);
    out.mu = product(out.mu_factors);
    {
        const BlockList* lists[6] = {&down_iso, &up_iso, &down_iso,
                                     &up_alpha, &down_alpha, &up_alpha};
        const bool negs[6] = {false, true, false, false, true, false};
        out.eta_inv = inverse_product(lists, negs);
    }
    {
        const BlockList* lists[6] = {&mu_down_iso, &mu_up_iso, &mu_down_iso,
                                     &mu_up_alpha, &mu_down_alpha, &mu_up_alpha};
        const bool negs[6] = {false, true, false, false, true, false};
        out.mu_inv = inverse_product(lists, negs);
    }
    return out;
}

LayerMorphism build_beta_product(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                                 const IntervalSpec& I, const LayerSchedule& sched, int N) {
    EtaMu em = build_eta_mu(alpha, alpha_inv, I, sched, N);
    LayerMorphism alpha_ext = LayerMorphism::identity(em.stack);
    alpha_ext.set_block(1, 1, alpha); // layer 1 of the stack is the input module
    return compose(em.eta, compose(alpha_ext, em.mu));
}

LayerMorphism build_beta_closed(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                                const IntervalSpec& I, const LayerSchedule& sched, int N) {
    require_automorphism_pair(alpha, alpha_inv);
    require_small(alpha, alpha_inv);
    if (N < 2) throw UsageError("the construction needs at least two layers");
    const GeoModule& A = alpha.source();
    if (!module_avoids_boundary(A, I))
        throw PreconditionError("module support touches the interval boundary; shift the input");

    GeoMorphism abar = clip(alpha, I);
    GeoMorphism abar_inv = clip(alpha_inv, I);
    GeoMorphism id = GeoMorphism::identity(A);

    GeoMorphism w_ab = compose(abar, abar_inv);
    GeoMorphism w_ba = compose(abar_inv, abar);
    GeoMorphism w_bab = compose(abar_inv, w_ab);
    GeoMorphism w_aba = compose(abar, w_ba);
    GeoMorphism w_abab = compose(w_ab, w_ab);
    GeoMorphism w_baba = compose(w_ba, w_ba);
    GeoMorphism w_babab = compose(w_bab, w_ab);

    GeoMorphism gamma_word = w_bab.scaled(Rational(-3)) + abar_inv.scaled(Rational(2)) + w_babab;
    GeoMorphism delta_word = w_ab.scaled(Rational(2)) - w_abab;
    GeoMorphism kappa_word = id - w_ab.scaled(Rational(2)) + w_abab;
    GeoMorphism rho_word = abar - w_aba;
    GeoMorphism delta_x_word = w_ba.scaled(Rational(2)) - w_baba;
    GeoMorphism kappa_x_word = id - w_ba.scaled(Rational(2)) + w_baba;

    LayerSum stack = squeeze_total(A, I, sched, N);
    LayerMorphism beta(stack, stack);
    auto iso = [&](int i, int j) { return layer_iso(A, I, sched, i, j); };
    auto layer = [&](const GeoMorphism& f, int n) { return squeeze_layer(f, I, sched, n); };

    // first column: the input enters through layer 1
    beta.set_block(1, 1, compose(abar_inv.scaled(Rational(2)) - w_bab, alpha));
    if (N >= 2) beta.set_block(2, 1, compose(iso(1, 2), compose(w_ab - id, alpha)));

    for (int j = 2; j <= N; ++j) {
        if (j % 2 == 0) {
            GeoMorphism gj = layer(gamma_word, j);
            beta.set_block(j - 1, j, compose(iso(j, j - 1), gj));
            beta.set_block(j, j, layer(delta_word, j));
            if (j + 1 <= N) beta.set_block(j + 1, j, -compose(iso(j, j + 1), gj));
            if (j + 2 <= N)
                beta.set_block(j + 2, j,
                               compose(iso(j + 1, j + 2),
                                       compose(iso(j, j + 1), layer(kappa_word, j))));
        } else {
            GeoMorphism rj = layer(rho_word, j);
            beta.set_block(j - 2, j,
                           compose(iso(j - 1, j - 2),
                                   compose(iso(j, j - 1), layer(kappa_x_word, j))));
            beta.set_block(j - 1, j, compose(iso(j, j - 1), rj));
            beta.set_block(j, j, layer(delta_x_word, j));
            if (j + 1 <= N) beta.set_block(j + 1, j, -compose(iso(j, j + 1), rj));
        }
    }
    return beta;
}

Rational default_preshift(const GeoModule& m) {
    std::vector<Rational> xs;
    for (const auto& [rep, rank] : m.orbit_data()) xs.push_back(rep.x);
    mpz_class l = denominator_lcm(xs.begin(), xs.end());
    return Rational(mpz_class(1), 4 * l);
}

namespace {

struct OffenderSink {
    std::vector<VanishOffender>& out;
    const std::string flag;
    int count = 0;

    void add(int ti, int sj, const Point& from, const Point& to, const Matrix<Rational>& m,
             const std::string& note) {
        if (count++ < kMaxOffendersPerFlag) out.push_back({flag, ti, sj, from, to, m, note});
    }
    bool clean() const { return count == 0; }
};

} // namespace

VanishReport verify_vanishing(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                              const IntervalSpec& I, int N, const Window& w) {
    require_automorphism_pair(alpha, alpha_inv);
    require_small(alpha, alpha_inv);

    const GeoModule& A = alpha.source();
    const IntervalSpec mid{I.a + Rational(1, 2)};
    for (const auto& [rep, rank] : A.orbit_data()) {
        if (I.on_boundary(rep.x))
            throw PreconditionError("support touches the integer translates of the interval "
                                    "boundary; apply a shift first");
        if (mid.on_boundary(rep.x))
            throw PreconditionError(
                "support touches the half-integer translates; apply a shift first");
    }

    Rational K = max_vsize(alpha, alpha_inv);
    LayerSchedule sched = select_schedule(alpha, alpha_inv, K, N, I);
    if (!(w.t_hi < sched.tau(std::max(1, N - 3))))
        throw PreconditionError("window reaches into the truncation fringe: raise the layer "
                                "count or lower the window");

    VanishReport rep;
    rep.input_hsize = alpha.sizes().hsize;
    rep.input_inv_hsize = alpha_inv.sizes().hsize;
    rep.schedule_step = sched.step();
    rep.layers = N;
    rep.window = w;

    EtaMu em = build_eta_mu(alpha, alpha_inv, I, sched, N);
    LayerMorphism alpha_ext = LayerMorphism::identity(em.stack);
    alpha_ext.set_block(1, 1, alpha);
    LayerMorphism beta = compose(em.eta, compose(alpha_ext, em.mu));
    LayerMorphism beta_closed = build_beta_closed(alpha, alpha_inv, I, sched, N);

    // 1. product equals closed form on the window
    {
        OffenderSink sink{rep.counterexamples, "beta_matches_closed_form"};
        LayerMorphism bp = beta.below(w.t_hi), bc = beta_closed.below(w.t_hi);
        std::set<std::pair<int, int>> keys;
        for (const auto& [k, g] : bp.blocks()) keys.insert(k);
        for (const auto& [k, g] : bc.blocks()) keys.insert(k);
        for (const auto& k : keys) {
            GeoMorphism diff = bp.block(k.first, k.second) - bc.block(k.first, k.second);
            for (const auto& [pts, m] : diff.blocks())
                sink.add(k.first, k.second, pts.first, pts.second, m,
                         "difference of product and closed form");
        }
        rep.beta_matches_closed_form = sink.clean();
    }

    // 2. beta restricts to the translates of (a + 1/2, a + 3/2)
    {
        OffenderSink sink{rep.counterexamples, "beta_restricts"};
        for (const auto& [k, g] : beta.blocks())
            for (const auto& [pts, m] : g.blocks()) {
                if (pts.first.t > w.t_hi && pts.second.t > w.t_hi) continue;
                if (mid.cell_of(pts.first.x) != mid.cell_of(pts.second.x))
                    sink.add(k.first, k.second, pts.first, pts.second, m,
                             "component crosses a half-integer translate");
            }
        rep.beta_restricts = sink.clean();
    }

    // 3. beta is the identity on V within the window
    {
        OffenderSink sink{rep.counterexamples, "beta_identity_on_V"};
        SubspaceSpec V = subspace_V(I, sched, N);
        for (const auto& [k, g] : beta.blocks()) {
            const bool diag = k.first == k.second;
            for (const auto& [pts, m] : g.blocks()) {
                if (pts.first.t > w.t_hi && pts.second.t > w.t_hi) continue;
                const bool si = V.contains(pts.first), ti = V.contains(pts.second);
                if (!si && !ti) continue;
                if (diag && si && ti && pts.first == pts.second && m.is_identity()) continue;
                sink.add(k.first, k.second, pts.first, pts.second, m,
                         diag ? "diagonal block is not the pointwise identity on V"
                              : "cross-layer block touches V");
            }
        }
        for (int n = 1; n <= N && sink.clean(); ++n) {
            GeoMorphism diag = beta.block(n, n);
            for (const auto& [p, rank] : em.stack.layer(n).orbit_data()) {
                if (p.t > w.t_hi || !V.contains(p)) continue;
                if (diag.blocks().find({p, p}) == diag.blocks().end())
                    sink.add(n, n, p, p, Matrix<Rational>(0, 0), "missing identity component");
            }
        }
        rep.beta_identity_on_v = sink.clean();
    }

    // 4. eta and mu invert exactly on the window
    {
        OffenderSink sink{rep.counterexamples, "eta_mu_invertible"};
        LayerMorphism id = LayerMorphism::identity(em.stack);
        auto check = [&](const LayerMorphism& x, const LayerMorphism& y, const std::string& who) {
            LayerMorphism p = compose(x, y).below(w.t_hi);
            LayerMorphism q = id.below(w.t_hi);
            std::set<std::pair<int, int>> keys;
            for (const auto& [k, g] : p.blocks()) keys.insert(k);
            for (const auto& [k, g] : q.blocks()) keys.insert(k);
            for (const auto& k : keys) {
                GeoMorphism diff = p.block(k.first, k.second) - q.block(k.first, k.second);
                for (const auto& [pts, m] : diff.blocks())
                    sink.add(k.first, k.second, pts.first, pts.second, m, who);
            }
        };
        check(em.eta, em.eta_inv, "eta . eta^-1");
        check(em.eta_inv, em.eta, "eta^-1 . eta");
        check(em.mu, em.mu_inv, "mu . mu^-1");
        check(em.mu_inv, em.mu, "mu^-1 . mu");
        rep.eta_mu_invertible = sink.clean();
    }

    return rep;
}

} // namespace ctrlk
