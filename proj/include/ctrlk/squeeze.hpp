#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ctrlk/geometry.hpp"

namespace ctrlk {

/// The open unit interval I = (a, a+1) whose integer translates tile the
/// line. Cell k of a point x is floor(x - a).
struct IntervalSpec {
    Rational a;

    long cell_of(const Rational& x) const { return (x - a).floor_long(); }
    bool on_boundary(const Rational& x) const { return (x - a).is_integer(); }
};

/// Layer heights tau(1) = 1 < tau(2) < ...; affine generator
/// tau(n) = 1 + (n-1) * step with step > 0. The default step 1 gives
/// tau(n) = n.
class LayerSchedule {
public:
    explicit LayerSchedule(Rational step = Rational(1));
    Rational tau(int n) const; // n >= 1
    const Rational& step() const { return step_; }

    friend bool operator==(const LayerSchedule& a, const LayerSchedule& b) {
        return a.step_ == b.step_;
    }

private:
    Rational step_;
};

/// The piecewise-affine contraction toward cell midpoints: on cell k it maps
/// [a+k, a+k+1) onto [a+k+1/2-1/(2n), a+k+1/2+1/(2n)) with slope 1/n.
/// Commutes with integer translation; the n = 1 map is the identity.
Rational squeeze_x(const IntervalSpec& I, int n, const Rational& x);
/// Inverse of squeeze_x on its image; throws UsageError off the image.
Rational unsqueeze_x(const IntervalSpec& I, int n, const Rational& y);

Point squeeze_point(const IntervalSpec& I, const LayerSchedule& sched, int n, const Point& p);

bool module_avoids_boundary(const GeoModule& m, const IntervalSpec& I);

/// Whether the morphism lies in the interval subcategory: module supports
/// avoid the boundary translates of I and no component crosses between
/// different cells.
bool restricts_to_interval(const GeoMorphism& f, const IntervalSpec& I);

/// Zeroes every component whose endpoints lie in different cells of I.
GeoMorphism clip(const GeoMorphism& f, const IntervalSpec& I);

/// Layer n of the squeezing: support relocated by squeeze_x and raised by
/// tau(n) - 1. Layer 1 is the input itself. Morphisms must restrict to I
/// (and for the dihedral group 2a must be integral so the contraction is
/// reflection-equivariant).
GeoModule squeeze_layer(const GeoModule& m, const IntervalSpec& I, const LayerSchedule& sched,
                        int n);
GeoMorphism squeeze_layer(const GeoMorphism& f, const IntervalSpec& I, const LayerSchedule& sched,
                          int n);

/// Canonical relabeling isomorphism between layer i and layer j of the
/// squeezing of the base module.
GeoMorphism layer_iso(const GeoModule& base, const IntervalSpec& I, const LayerSchedule& sched,
                      int i, int j);

/// Formal direct sum of geometric modules, one summand per layer (1-based).
struct LayerSum {
    std::vector<GeoModule> layers;

    int count() const { return static_cast<int>(layers.size()); }
    const GeoModule& layer(int n) const;

    friend bool operator==(const LayerSum& a, const LayerSum& b) { return a.layers == b.layers; }
    friend bool operator!=(const LayerSum& a, const LayerSum& b) { return !(a == b); }
};

/// Morphism between layer sums: a sparse block matrix of equivariant
/// morphisms indexed by (target layer, source layer), both 1-based.
class LayerMorphism {
public:
    LayerMorphism() = default;
    LayerMorphism(LayerSum source, LayerSum target)
        : source_(std::move(source)), target_(std::move(target)) {}

    static LayerMorphism identity(const LayerSum& s);

    const LayerSum& source() const { return source_; }
    const LayerSum& target() const { return target_; }
    const std::map<std::pair<int, int>, GeoMorphism>& blocks() const { return blocks_; }

    void set_block(int target_layer, int source_layer, const GeoMorphism& f);
    void add_block(int target_layer, int source_layer, const GeoMorphism& f);
    /// Zero morphism of the right shape when the pair is absent.
    GeoMorphism block(int target_layer, int source_layer) const;

    friend bool operator==(const LayerMorphism& a, const LayerMorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const LayerMorphism& a, const LayerMorphism& b) { return !(a == b); }

    /// Copy with every geometric block height-filtered; empty blocks drop.
    LayerMorphism below(const Rational& t_hi) const;

private:
    LayerSum source_, target_;
    std::map<std::pair<int, int>, GeoMorphism> blocks_;
};

LayerMorphism compose(const LayerMorphism& g, const LayerMorphism& f);

/// Total squeezing truncated to N layers.
LayerSum squeeze_total(const GeoModule& m, const IntervalSpec& I, const LayerSchedule& sched,
                       int N);
LayerMorphism squeeze_total(const GeoMorphism& f, const IntervalSpec& I,
                            const LayerSchedule& sched, int N);

/// Witness of flasqueness for the unit-step schedule: mutually inverse
/// morphisms between (stack + extra copy of the base) and the stack, routing
/// the extra copy into layer 1 and layer n into layer n+1. Compositions are
/// the identity on all heights below tau(N).
struct FlasquePair {
    LayerSum stack_plus; // layers 1..N then the extra base copy at index N+1
    LayerSum stack;
    LayerMorphism fwd; // stack_plus -> stack
    LayerMorphism bwd; // stack -> stack_plus
};
FlasquePair flasque_iso(const GeoModule& base, const IntervalSpec& I, int N);

/// The middle-third band of the cells of I, periodic.
SubspaceSpec subspace_U(const IntervalSpec& I);
/// Shrinking band union: width 1/(3n) around cell midpoints at heights
/// [tau(n), tau(n+1)), with the level-N box extended upward.
SubspaceSpec subspace_V(const IntervalSpec& I, const LayerSchedule& sched, int N);

/// Checks that every squeezed layer of an endomorphism that is the identity
/// on U is the identity on V (layers 1..N). Throws PreconditionError when
/// the input does not restrict to I or is not the identity on U.
bool lemma_identity_check(const GeoMorphism& gamma, const IntervalSpec& I,
                          const LayerSchedule& sched, int N, const Window& w);

/// Total-morphism identity test on a subspace, certified up to height t_hi:
/// diagonal blocks are the identity there, off-diagonal blocks vanish there.
bool layer_identity_on_below(const LayerMorphism& f, const SubspaceSpec& Y, const Rational& t_hi);

} // namespace ctrlk
