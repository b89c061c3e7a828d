#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctrlk/matrix.hpp"
#include "ctrlk/rational.hpp"

namespace ctrlk {

/// The two symmetry groups acting on the line (or on two copies of it):
///   InfiniteCyclic:   generator acts by x -> x + 1 on a single copy;
///   InfiniteDihedral: r acts by (c, x) -> (c, x+1) on two copies and
///                     s acts by (c, x) -> (1-c, -x).
enum class Group { InfiniteCyclic, InfiniteDihedral };

std::string group_name(Group g);
Group group_from_name(const std::string& name);

/// Group element in the normal form r^m s^flip (t^m for the cyclic group,
/// where flip is always 0).
struct GroupElem {
    long m = 0;
    int flip = 0;

    GroupElem inverse() const { return {flip ? m : -m, flip}; }
    friend GroupElem operator*(const GroupElem& a, const GroupElem& b) {
        return {a.m + (a.flip ? -b.m : b.m), a.flip ^ b.flip};
    }
    friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

/// A location in (copy of R) x [1, infinity): copy index (0 unless the group
/// is dihedral), horizontal coordinate x, and height t >= 1.
struct Point {
    int copy = 0;
    Rational x;
    Rational t = Rational(1);

    friend bool operator==(const Point& a, const Point& b) {
        return a.copy == b.copy && a.x == b.x && a.t == b.t;
    }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.copy != b.copy) return a.copy < b.copy;
        if (a.x != b.x) return a.x < b.x;
        return a.t < b.t;
    }
    friend std::ostream& operator<<(std::ostream& os, const Point& p);
};

Point apply(Group group, const GroupElem& g, const Point& p);

/// Canonical orbit representative (copy 0, x in [0,1)) together with the
/// unique group element carrying the representative to the original point.
struct CanonicalPoint {
    Point rep;
    GroupElem g; // apply(group, g, rep) == original point
};
CanonicalPoint canonicalize(Group group, const Point& p);

/// Bounded closed box used to materialize equivariant data. An optional copy
/// filter narrows to one copy of the line.
struct Window {
    Rational x_lo, x_hi;
    Rational t_lo = Rational(1), t_hi;
    std::optional<int> copy;

    bool contains(const Point& p) const;
};

/// Finite union of boxes defining a subspace of (copies of R) x [1, inf).
/// With the periodic flag the x-patterns are read modulo integer
/// translation, i.e. the subspace is the union of all integer translates of
/// the boxes.
struct SubspaceBox {
    std::optional<int> copy;
    Rational x_lo, x_hi;
    bool x_lo_closed = true, x_hi_closed = true;
    Rational t_lo = Rational(1);
    Rational t_hi;              // ignored when t_unbounded
    bool t_lo_closed = true, t_hi_closed = false;
    bool t_unbounded = true;
};

class SubspaceSpec {
public:
    SubspaceSpec() = default;
    explicit SubspaceSpec(std::vector<SubspaceBox> boxes, bool periodic)
        : boxes_(std::move(boxes)), periodic_(periodic) {}

    static SubspaceSpec everything();
    static SubspaceSpec empty_set();

    const std::vector<SubspaceBox>& boxes() const { return boxes_; }
    bool is_periodic() const { return periodic_; }

    bool contains(const Point& p) const;

    /// Whether membership is invariant under the full group action: for the
    /// cyclic group this is just periodicity; for the dihedral group the
    /// periodic x-patterns must additionally be symmetric (lo + hi integral)
    /// and cover both copies.
    bool is_group_invariant(Group group) const;

private:
    bool box_contains(const SubspaceBox& b, const Point& p) const;

    std::vector<SubspaceBox> boxes_;
    bool periodic_ = false;
};

/// Sizes of a morphism: horizontal and vertical reach of its support, with
/// projected distance for dihedral cross-copy components. The zero morphism
/// has all sizes zero.
struct Sizes {
    Rational size;   // equals hsize
    Rational hsize;
    Rational vsize;
};

/// Equivariant geometric module: finitely many orbit representatives in the
/// fundamental domain (copy 0, x in [0,1)), each carrying a free module of
/// positive rank. The actual support is the orbit of the representatives.
class GeoModule {
public:
    explicit GeoModule(Group group = Group::InfiniteCyclic) : group_(group) {}

    Group group() const { return group_; }
    const std::map<Point, int>& orbit_data() const { return orbit_; }
    bool is_empty() const { return orbit_.empty(); }

    /// Registers an orbit through the given point (any point of the orbit
    /// may be passed; t must be >= 1 and the rank positive). Re-adding an
    /// orbit already present is an error.
    void add_orbit(const Point& p, int rank);

    /// Rank of the module at an arbitrary point (0 off the support).
    int rank_at(const Point& p) const;

    /// Min/max height over the orbit representatives; module must be
    /// nonempty.
    Rational min_height() const;
    Rational max_height() const;

    std::vector<std::pair<Point, int>> materialize(const Window& w) const;

    GeoModule shifted(const Rational& offset) const; // InfiniteCyclic only

    friend bool operator==(const GeoModule& a, const GeoModule& b) {
        return a.group_ == b.group_ && a.orbit_ == b.orbit_;
    }
    friend bool operator!=(const GeoModule& a, const GeoModule& b) { return !(a == b); }

private:
    Group group_;
    std::map<Point, int> orbit_;
};

/// One materialized component of a morphism: a scalar matrix from the module
/// at `from` to the module at `to`.
struct RawBlock {
    Point from, to;
    Matrix<Rational> mat;
};

/// Equivariant morphism between geometric modules over the same group.
/// Blocks are stored from fundamental-domain source representatives to
/// arbitrary target points; the full morphism is the closure under the group
/// action. Stored blocks are always nonzero and shape-consistent with the
/// module ranks.
class GeoMorphism {
public:
    GeoMorphism() = default;
    GeoMorphism(GeoModule source, GeoModule target);

    static GeoMorphism identity(const GeoModule& m);
    static GeoMorphism zero(const GeoModule& source, const GeoModule& target) {
        return GeoMorphism(source, target);
    }

    Group group() const { return source_.group(); }
    const GeoModule& source() const { return source_; }
    const GeoModule& target() const { return target_; }
    const std::map<std::pair<Point, Point>, Matrix<Rational>>& blocks() const { return blocks_; }
    bool is_zero() const { return blocks_.empty(); }
    bool is_endomorphism() const { return source_ == target_; }

    /// Accumulates a component from `from` to `to` (arbitrary points of the
    /// supports); the pair is canonicalized onto a fundamental-domain source
    /// representative. Cancellation to zero removes the block.
    void add_block(const Point& from, const Point& to, const Matrix<Rational>& m);

    /// The component of the full morphism between two arbitrary points.
    Matrix<Rational> block_at(const Point& from, const Point& to) const;

    GeoMorphism operator-() const;
    GeoMorphism& operator+=(const GeoMorphism& o);
    GeoMorphism& operator-=(const GeoMorphism& o);
    friend GeoMorphism operator+(GeoMorphism a, const GeoMorphism& b) { return a += b; }
    friend GeoMorphism operator-(GeoMorphism a, const GeoMorphism& b) { return a -= b; }
    GeoMorphism scaled(const Rational& c) const;

    friend bool operator==(const GeoMorphism& a, const GeoMorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const GeoMorphism& a, const GeoMorphism& b) { return !(a == b); }

    Sizes sizes() const;

    /// Block instances whose source point lies in the window.
    std::vector<RawBlock> materialize(const Window& w) const;

    /// Sub-morphism keeping only blocks with an endpoint at height <= t_hi.
    GeoMorphism below(const Rational& t_hi) const;

    GeoMorphism shifted(const Rational& offset) const; // InfiniteCyclic only

private:
    GeoModule source_, target_;
    std::map<std::pair<Point, Point>, Matrix<Rational>> blocks_;
};

/// Composition g . f (apply f first). Inner modules must agree.
GeoMorphism compose(const GeoMorphism& g, const GeoMorphism& f);

/// Keeps exactly the components with source in Y and target in Z. Both
/// subspaces must be invariant under the full group action.
GeoMorphism restrict_block(const GeoMorphism& f, const SubspaceSpec& Y, const SubspaceSpec& Z);

/// Zero-on / identity-on predicates from the restriction calculus. For
/// group-invariant subspaces the check is global and exact; otherwise a
/// window is required and the answer is certified within it.
bool is_zero_on(const GeoMorphism& f, const SubspaceSpec& Y,
                const std::optional<Window>& w = std::nullopt);
bool is_identity_on(const GeoMorphism& f, const SubspaceSpec& Y,
                    const std::optional<Window>& w = std::nullopt);

/// Same predicates restricted to block instances reaching height <= t_hi.
bool is_zero_on_below(const GeoMorphism& f, const SubspaceSpec& Y, const Rational& t_hi);
bool is_identity_on_below(const GeoMorphism& f, const SubspaceSpec& Y, const Rational& t_hi);

/// Checks that an explicit family of blocks is consistent with the group
/// action and complete within the window: translated pairs that both land in
/// the window must be present with equal matrices.
bool check_equivariance(Group group, const std::vector<RawBlock>& blocks, const Window& w);
bool check_equivariance(const GeoMorphism& f, const Window& w);

/// Group elements g with apply(g, p) inside the window.
std::vector<GroupElem> elements_mapping_into(Group group, const Point& p, const Window& w);

} // namespace ctrlk
