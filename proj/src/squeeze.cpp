#include "ctrlk/squeeze.hpp"

#include <string>

#include "ctrlk/errors.hpp"

namespace ctrlk {

LayerSchedule::LayerSchedule(Rational step) : step_(std::move(step)) {
    if (!(step_ > Rational(0))) throw UsageError("layer schedule step must be positive");
}

Rational LayerSchedule::tau(int n) const {
    if (n < 1) throw UsageError("layer index must be >= 1");
    return Rational(1) + Rational(n - 1) * step_;
}

Rational squeeze_x(const IntervalSpec& I, int n, const Rational& x) {
    if (n < 1) throw UsageError("layer index must be >= 1");
    Rational k(I.cell_of(x));
    return I.a + k + Rational(1, 2) - Rational(1, 2 * static_cast<long>(n)) +
           (x - I.a - k) / Rational(n);
}

Rational unsqueeze_x(const IntervalSpec& I, int n, const Rational& y) {
    if (n < 1) throw UsageError("layer index must be >= 1");
    Rational k(I.cell_of(y));
    Rational x = I.a + k +
                 (y - I.a - k - Rational(1, 2) + Rational(1, 2 * static_cast<long>(n))) *
                     Rational(n);
    if (I.cell_of(x) != I.cell_of(y) || squeeze_x(I, n, x) != y)
        throw UsageError("point is not in the image of the contraction");
    return x;
}

Point squeeze_point(const IntervalSpec& I, const LayerSchedule& sched, int n, const Point& p) {
    return {p.copy, squeeze_x(I, n, p.x), p.t + sched.tau(n) - Rational(1)};
}

bool module_avoids_boundary(const GeoModule& m, const IntervalSpec& I) {
    for (const auto& [rep, rank] : m.orbit_data())
        if (I.on_boundary(rep.x)) return false;
    return true;
}

bool restricts_to_interval(const GeoMorphism& f, const IntervalSpec& I) {
    if (!module_avoids_boundary(f.source(), I) || !module_avoids_boundary(f.target(), I))
        return false;
    for (const auto& [key, m] : f.blocks())
        if (I.cell_of(key.first.x) != I.cell_of(key.second.x)) return false;
    return true;
}

GeoMorphism clip(const GeoMorphism& f, const IntervalSpec& I) {
    GeoMorphism r(f.source(), f.target());
    for (const auto& [key, m] : f.blocks())
        if (I.cell_of(key.first.x) == I.cell_of(key.second.x))
            r.add_block(key.first, key.second, m);
    return r;
}

namespace {

void require_squeezable(const GeoMorphism& f, const IntervalSpec& I) {
    if (!restricts_to_interval(f, I))
        throw PreconditionError("morphism does not restrict to the interval");
    if (f.group() == Group::InfiniteDihedral && !(I.a + I.a).is_integer())
        throw PreconditionError(
            "dihedral squeezing requires 2a integral so contraction commutes with reflections");
}

} // namespace

GeoModule squeeze_layer(const GeoModule& m, const IntervalSpec& I, const LayerSchedule& sched,
                        int n) {
    if (!module_avoids_boundary(m, I))
        throw PreconditionError("module support touches the interval boundary");
    GeoModule out(m.group());
    for (const auto& [rep, rank] : m.orbit_data())
        out.add_orbit(squeeze_point(I, sched, n, rep), rank);
    return out;
}

GeoMorphism squeeze_layer(const GeoMorphism& f, const IntervalSpec& I, const LayerSchedule& sched,
                          int n) {
    require_squeezable(f, I);
    GeoMorphism out(squeeze_layer(f.source(), I, sched, n),
                    squeeze_layer(f.target(), I, sched, n));
    for (const auto& [key, m] : f.blocks())
        out.add_block(squeeze_point(I, sched, n, key.first),
                      squeeze_point(I, sched, n, key.second), m);
    return out;
}

GeoMorphism layer_iso(const GeoModule& base, const IntervalSpec& I, const LayerSchedule& sched,
                      int i, int j) {
    if (!module_avoids_boundary(base, I))
        throw PreconditionError("module support touches the interval boundary");
    GeoMorphism out(squeeze_layer(base, I, sched, i), squeeze_layer(base, I, sched, j));
    for (const auto& [rep, rank] : base.orbit_data())
        out.add_block(squeeze_point(I, sched, i, rep), squeeze_point(I, sched, j, rep),
                      Matrix<Rational>::identity(static_cast<std::size_t>(rank)));
    return out;
}

const GeoModule& LayerSum::layer(int n) const {
    if (n < 1 || n > count()) throw UsageError("layer index out of range");
    return layers[static_cast<std::size_t>(n - 1)];
}

LayerMorphism LayerMorphism::identity(const LayerSum& s) {
    LayerMorphism f(s, s);
    for (int n = 1; n <= s.count(); ++n) f.set_block(n, n, GeoMorphism::identity(s.layer(n)));
    return f;
}

void LayerMorphism::set_block(int target_layer, int source_layer, const GeoMorphism& f) {
    if (f.source() != source_.layer(source_layer) || f.target() != target_.layer(target_layer))
        throw UsageError("layer block endpoints do not match the layer modules");
    if (f.is_zero())
        blocks_.erase({target_layer, source_layer});
    else
        blocks_.insert_or_assign({target_layer, source_layer}, f);
}

void LayerMorphism::add_block(int target_layer, int source_layer, const GeoMorphism& f) {
    auto it = blocks_.find({target_layer, source_layer});
    if (it == blocks_.end()) {
        set_block(target_layer, source_layer, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) blocks_.erase(it);
}

GeoMorphism LayerMorphism::block(int target_layer, int source_layer) const {
    auto it = blocks_.find({target_layer, source_layer});
    if (it != blocks_.end()) return it->second;
    return GeoMorphism::zero(source_.layer(source_layer), target_.layer(target_layer));
}

LayerMorphism LayerMorphism::below(const Rational& t_hi) const {
    LayerMorphism out(source_, target_);
    for (const auto& [key, f] : blocks_) {
        GeoMorphism g = f.below(t_hi);
        if (!g.is_zero()) out.blocks_.emplace(key, g);
    }
    return out;
}

LayerMorphism compose(const LayerMorphism& g, const LayerMorphism& f) {
    if (f.target() != g.source()) throw UsageError("layer composition endpoint mismatch");
    LayerMorphism out(f.source(), g.target());
    for (const auto& [gkey, gm] : g.blocks())
        for (const auto& [fkey, fm] : f.blocks()) {
            if (gkey.second != fkey.first) continue;
            out.add_block(gkey.first, fkey.second, compose(gm, fm));
        }
    return out;
}

LayerSum squeeze_total(const GeoModule& m, const IntervalSpec& I, const LayerSchedule& sched,
                       int N) {
    if (N < 1) throw UsageError("layer truncation must be >= 1");
    LayerSum s;
    for (int n = 1; n <= N; ++n) s.layers.push_back(squeeze_layer(m, I, sched, n));
    return s;
}

LayerMorphism squeeze_total(const GeoMorphism& f, const IntervalSpec& I,
                            const LayerSchedule& sched, int N) {
    if (N < 1) throw UsageError("layer truncation must be >= 1");
    LayerMorphism out(squeeze_total(f.source(), I, sched, N),
                      squeeze_total(f.target(), I, sched, N));
    for (int n = 1; n <= N; ++n) out.set_block(n, n, squeeze_layer(f, I, sched, n));
    return out;
}

FlasquePair flasque_iso(const GeoModule& base, const IntervalSpec& I, int N) {
    if (N < 1) throw UsageError("layer truncation must be >= 1");
    LayerSchedule sched(Rational(1));
    FlasquePair out;
    out.stack = squeeze_total(base, I, sched, N);
    out.stack_plus = out.stack;
    out.stack_plus.layers.push_back(base);

    out.fwd = LayerMorphism(out.stack_plus, out.stack);
    out.bwd = LayerMorphism(out.stack, out.stack_plus);
    if (!base.is_empty()) {
        out.fwd.set_block(1, N + 1, GeoMorphism::identity(base));
        out.bwd.set_block(N + 1, 1, GeoMorphism::identity(base));
    }
    for (int n = 1; n + 1 <= N; ++n) {
        out.fwd.set_block(n + 1, n, layer_iso(base, I, sched, n, n + 1));
        out.bwd.set_block(n, n + 1, layer_iso(base, I, sched, n + 1, n));
    }
    return out;
}

SubspaceSpec subspace_U(const IntervalSpec& I) {
    SubspaceBox b;
    b.x_lo = I.a + Rational(1, 3);
    b.x_hi = I.a + Rational(2, 3);
    return SubspaceSpec({b}, true);
}

SubspaceSpec subspace_V(const IntervalSpec& I, const LayerSchedule& sched, int N) {
    if (N < 1) throw UsageError("layer truncation must be >= 1");
    std::vector<SubspaceBox> boxes;
    for (int n = 1; n <= N; ++n) {
        SubspaceBox b;
        Rational w(1, 6 * static_cast<long>(n));
        b.x_lo = I.a + Rational(1, 2) - w;
        b.x_hi = I.a + Rational(1, 2) + w;
        b.t_lo = sched.tau(n);
        if (n < N) {
            b.t_unbounded = false;
            b.t_hi = sched.tau(n + 1);
            b.t_hi_closed = false;
        }
        boxes.push_back(b);
    }
    return SubspaceSpec(std::move(boxes), true);
}

bool lemma_identity_check(const GeoMorphism& gamma, const IntervalSpec& I,
                          const LayerSchedule& sched, int N, const Window& w) {
    require_squeezable(gamma, I);
    if (!gamma.is_endomorphism())
        throw PreconditionError("lemma check requires an endomorphism");
    if (!is_identity_on(gamma, subspace_U(I)))
        throw PreconditionError("morphism is not the identity on the band U");
    SubspaceSpec V = subspace_V(I, sched, N);
    for (int n = 1; n <= N; ++n) {
        GeoMorphism sn = squeeze_layer(gamma, I, sched, n);
        if (!is_identity_on_below(sn, V, w.t_hi)) return false;
    }
    return true;
}

bool layer_identity_on_below(const LayerMorphism& f, const SubspaceSpec& Y, const Rational& t_hi) {
    if (f.source() != f.target()) throw UsageError("identity-on check requires an endomorphism");
    for (const auto& [key, g] : f.blocks()) {
        if (key.first == key.second) continue;
        if (!is_zero_on_below(g, Y, t_hi)) return false;
    }
    for (int n = 1; n <= f.source().count(); ++n)
        if (!is_identity_on_below(f.block(n, n), Y, t_hi)) return false;
    return true;
}

} // namespace ctrlk
