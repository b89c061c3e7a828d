#include "ctrlk/geometry.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "ctrlk/errors.hpp"

namespace ctrlk {

std::string group_name(Group g) {
    return g == Group::InfiniteCyclic ? "infinite_cyclic" : "infinite_dihedral";
}

Group group_from_name(const std::string& name) {
    if (name == "infinite_cyclic") return Group::InfiniteCyclic;
    if (name == "infinite_dihedral") return Group::InfiniteDihedral;
    throw ParseError("unknown group: '" + name + "'");
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << "(" << p.copy << ", " << p.x << ", " << p.t << ")";
}

Point apply(Group group, const GroupElem& g, const Point& p) {
    if (group == Group::InfiniteCyclic) {
        if (g.flip) throw UsageError("reflection applied under the cyclic group");
        if (p.copy != 0) throw UsageError("cyclic-group point with nonzero copy index");
        return {0, p.x + Rational(g.m), p.t};
    }
    if (g.flip) return {1 - p.copy, -p.x + Rational(g.m), p.t};
    return {p.copy, p.x + Rational(g.m), p.t};
}

CanonicalPoint canonicalize(Group group, const Point& p) {
    if (p.copy != 0 && group == Group::InfiniteCyclic)
        throw UsageError("cyclic-group point with nonzero copy index");
    if (p.copy != 0 && p.copy != 1) throw UsageError("copy index must be 0 or 1");
    if (p.copy == 0) {
        long m = p.x.floor_long();
        return {{0, p.x.frac(), p.t}, {m, 0}};
    }
    // copy 1: s brings the point to copy 0 at -x, then translate.
    Rational rep_x = (-p.x).frac();
    mpz_class m = -(-p.x).floor();
    if (!m.fits_slong_p()) throw UsageError("coordinate out of machine range");
    return {{0, rep_x, p.t}, {m.get_si(), 1}};
}

bool Window::contains(const Point& p) const {
    if (copy && *copy != p.copy) return false;
    return x_lo <= p.x && p.x <= x_hi && t_lo <= p.t && p.t <= t_hi;
}

namespace {

mpz_class ceil_z(const Rational& r) { return -((-r).floor()); }

// Integer k range with x + k inside [lo, hi] honoring openness; returns
// (kmin, kmax) possibly empty (kmin > kmax).
std::pair<mpz_class, mpz_class> translate_range(const Rational& x, const Rational& lo,
                                                bool lo_closed, const Rational& hi,
                                                bool hi_closed) {
    Rational dlo = lo - x, dhi = hi - x;
    mpz_class kmin = lo_closed ? ceil_z(dlo) : dlo.floor() + 1;
    mpz_class kmax = hi_closed ? dhi.floor() : ceil_z(dhi) - 1;
    return {kmin, kmax};
}

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw UsageError("integer out of machine range: " + z.get_str());
    return z.get_si();
}

} // namespace

SubspaceSpec SubspaceSpec::everything() {
    SubspaceBox b;
    b.x_lo = Rational(0);
    b.x_hi = Rational(1);
    return SubspaceSpec({b}, true);
}

SubspaceSpec SubspaceSpec::empty_set() {
    return SubspaceSpec({}, true);
}

bool SubspaceSpec::box_contains(const SubspaceBox& b, const Point& p) const {
    if (b.copy && *b.copy != p.copy) return false;
    if (p.t < b.t_lo || (p.t == b.t_lo && !b.t_lo_closed)) return false;
    if (!b.t_unbounded) {
        if (p.t > b.t_hi || (p.t == b.t_hi && !b.t_hi_closed)) return false;
    }
    if (periodic_) {
        auto [kmin, kmax] = translate_range(p.x, b.x_lo, b.x_lo_closed, b.x_hi, b.x_hi_closed);
        return kmin <= kmax;
    }
    if (p.x < b.x_lo || (p.x == b.x_lo && !b.x_lo_closed)) return false;
    if (p.x > b.x_hi || (p.x == b.x_hi && !b.x_hi_closed)) return false;
    return true;
}

bool SubspaceSpec::contains(const Point& p) const {
    for (const auto& b : boxes_)
        if (box_contains(b, p)) return true;
    return false;
}

bool SubspaceSpec::is_group_invariant(Group group) const {
    if (!periodic_) return boxes_.empty();
    if (group == Group::InfiniteCyclic) return true;
    // Per-box reflection symmetry. Sufficient, not necessary: unions whose
    // boxes are only jointly symmetric are rejected.
    for (const auto& b : boxes_) {
        if (b.copy) return false;
        if (!(b.x_lo + b.x_hi).is_integer()) return false; // reflection symmetry mod 1
        if (b.x_lo_closed != b.x_hi_closed) return false;
    }
    return true;
}

void GeoModule::add_orbit(const Point& p, int rank) {
    if (rank <= 0) throw UsageError("module rank must be positive");
    if (p.t < Rational(1)) throw UsageError("point height must be >= 1");
    Point rep = canonicalize(group_, p).rep;
    if (!orbit_.emplace(rep, rank).second)
        throw UsageError("duplicate orbit representative in module");
}

int GeoModule::rank_at(const Point& p) const {
    auto it = orbit_.find(canonicalize(group_, p).rep);
    return it == orbit_.end() ? 0 : it->second;
}

Rational GeoModule::min_height() const {
    if (orbit_.empty()) throw UsageError("empty module has no height");
    Rational m = orbit_.begin()->first.t;
    for (const auto& [p, r] : orbit_) m = min(m, p.t);
    return m;
}

Rational GeoModule::max_height() const {
    if (orbit_.empty()) throw UsageError("empty module has no height");
    Rational m = orbit_.begin()->first.t;
    for (const auto& [p, r] : orbit_) m = max(m, p.t);
    return m;
}

std::vector<GroupElem> elements_mapping_into(Group group, const Point& p, const Window& w) {
    std::vector<GroupElem> out;
    if (p.t < w.t_lo || p.t > w.t_hi) return out;
    auto push_range = [&](const Rational& x, int flip, int image_copy) {
        if (w.copy && *w.copy != image_copy) return;
        auto [kmin, kmax] = translate_range(x, w.x_lo, true, w.x_hi, true);
        for (mpz_class k = kmin; k <= kmax; ++k) out.push_back({to_long(k), flip});
    };
    if (group == Group::InfiniteCyclic) {
        push_range(p.x, 0, 0);
        return out;
    }
    push_range(p.x, 0, p.copy);
    push_range(-p.x, 1, 1 - p.copy);
    return out;
}

std::vector<std::pair<Point, int>> GeoModule::materialize(const Window& w) const {
    std::vector<std::pair<Point, int>> out;
    for (const auto& [rep, rank] : orbit_)
        for (const auto& g : elements_mapping_into(group_, rep, w))
            out.emplace_back(apply(group_, g, rep), rank);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
    return out;
}

GeoModule GeoModule::shifted(const Rational& offset) const {
    if (group_ != Group::InfiniteCyclic)
        throw UsageError("shift is only defined for the cyclic group (reflection centers pin "
                         "the dihedral action)");
    GeoModule m(group_);
    for (const auto& [rep, rank] : orbit_) m.add_orbit({0, rep.x + offset, rep.t}, rank);
    return m;
}

GeoMorphism::GeoMorphism(GeoModule source, GeoModule target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_.group() != target_.group())
        throw UsageError("morphism between modules over different groups");
}

GeoMorphism GeoMorphism::identity(const GeoModule& m) {
    GeoMorphism f(m, m);
    for (const auto& [rep, rank] : m.orbit_data())
        f.add_block(rep, rep, Matrix<Rational>::identity(static_cast<std::size_t>(rank)));
    return f;
}

void GeoMorphism::add_block(const Point& from, const Point& to, const Matrix<Rational>& m) {
    const int src_rank = source_.rank_at(from);
    const int tgt_rank = target_.rank_at(to);
    if (src_rank == 0) throw UsageError("block source lies outside the source module support");
    if (tgt_rank == 0) throw UsageError("block target lies outside the target module support");
    if (m.rows() != static_cast<std::size_t>(tgt_rank) ||
        m.cols() != static_cast<std::size_t>(src_rank))
        throw UsageError("block shape does not match module ranks");

    CanonicalPoint c = canonicalize(group(), from);
    Point to_adj = apply(group(), c.g.inverse(), to);
    auto key = std::make_pair(c.rep, to_adj);
    auto it = blocks_.find(key);
    if (it == blocks_.end()) {
        if (!m.is_zero()) blocks_.emplace(key, m);
        return;
    }
    it->second += m;
    if (it->second.is_zero()) blocks_.erase(it);
}

Matrix<Rational> GeoMorphism::block_at(const Point& from, const Point& to) const {
    CanonicalPoint c = canonicalize(group(), from);
    auto it = blocks_.find({c.rep, apply(group(), c.g.inverse(), to)});
    if (it != blocks_.end()) return it->second;
    return Matrix<Rational>(static_cast<std::size_t>(target_.rank_at(to)),
                            static_cast<std::size_t>(source_.rank_at(from)));
}

GeoMorphism GeoMorphism::operator-() const {
    GeoMorphism r(source_, target_);
    for (const auto& [key, m] : blocks_) r.blocks_.emplace(key, -m);
    return r;
}

GeoMorphism& GeoMorphism::operator+=(const GeoMorphism& o) {
    if (source_ != o.source_ || target_ != o.target_)
        throw UsageError("sum of morphisms with different endpoints");
    for (const auto& [key, m] : o.blocks_) {
        auto it = blocks_.find(key);
        if (it == blocks_.end()) {
            blocks_.emplace(key, m);
            continue;
        }
        it->second += m;
        if (it->second.is_zero()) blocks_.erase(it);
    }
    return *this;
}

GeoMorphism& GeoMorphism::operator-=(const GeoMorphism& o) {
    return *this += -o;
}

GeoMorphism GeoMorphism::scaled(const Rational& c) const {
    GeoMorphism r(source_, target_);
    if (c.is_zero()) return r;
    for (const auto& [key, m] : blocks_) {
        Matrix<Rational> sm(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) sm.at(i, j) = m.at(i, j) * c;
        r.blocks_.emplace(key, sm);
    }
    return r;
}

Sizes GeoMorphism::sizes() const {
    Sizes s{Rational(0), Rational(0), Rational(0)};
    for (const auto& [key, m] : blocks_) {
        s.hsize = max(s.hsize, (key.first.x - key.second.x).abs());
        s.vsize = max(s.vsize, (key.first.t - key.second.t).abs());
    }
    s.size = s.hsize;
    return s;
}

std::vector<RawBlock> GeoMorphism::materialize(const Window& w) const {
    std::vector<RawBlock> out;
    for (const auto& [key, m] : blocks_)
        for (const auto& g : elements_mapping_into(group(), key.first, w))
            out.push_back({apply(group(), g, key.first), apply(group(), g, key.second), m});
    std::sort(out.begin(), out.end(), [](const RawBlock& a, const RawBlock& b) {
        if (!(a.from == b.from)) return a.from < b.from;
        return a.to < b.to;
    });
    return out;
}

GeoMorphism GeoMorphism::below(const Rational& t_hi) const {
    GeoMorphism r(source_, target_);
    for (const auto& [key, m] : blocks_)
        if (key.first.t <= t_hi || key.second.t <= t_hi) r.blocks_.emplace(key, m);
    return r;
}

GeoMorphism GeoMorphism::shifted(const Rational& offset) const {
    GeoMorphism r(source_.shifted(offset), target_.shifted(offset));
    for (const auto& [key, m] : blocks_)
        r.add_block({0, key.first.x + offset, key.first.t}, {0, key.second.x + offset, key.second.t},
                    m);
    return r;
}

GeoMorphism compose(const GeoMorphism& g, const GeoMorphism& f) {
    if (f.target() != g.source())
        throw UsageError("composition endpoint mismatch");
    // Group g's blocks by source representative.
    std::map<Point, std::vector<std::pair<Point, const Matrix<Rational>*>>> by_source;
    for (const auto& [key, m] : g.blocks()) by_source[key.first].emplace_back(key.second, &m);

    GeoMorphism r(f.source(), g.target());
    for (const auto& [fkey, fm] : f.blocks()) {
        CanonicalPoint mid = canonicalize(f.group(), fkey.second);
        auto it = by_source.find(mid.rep);
        if (it == by_source.end()) continue;
        for (const auto& [q, gm] : it->second)
            r.add_block(fkey.first, apply(f.group(), mid.g, q), (*gm) * fm);
    }
    return r;
}

GeoMorphism restrict_block(const GeoMorphism& f, const SubspaceSpec& Y, const SubspaceSpec& Z) {
    if (!Y.is_group_invariant(f.group()) || !Z.is_group_invariant(f.group()))
        throw UsageError("restriction of equivariant data requires group-invariant subspaces");
    GeoMorphism r(f.source(), f.target());
    for (const auto& [key, m] : f.blocks())
        if (Y.contains(key.first) && Z.contains(key.second)) r.add_block(key.first, key.second, m);
    return r;
}

namespace {

enum class PredicateKind { Zero, Identity };

bool check_pair(PredicateKind kind, const Point& a, const Point& b, const Matrix<Rational>& m,
                const SubspaceSpec& Y) {
    const bool si = Y.contains(a), ti = Y.contains(b);
    if (!si && !ti) return true;
    if (kind == PredicateKind::Zero) return false; // nonzero block touching Y
    if (si && ti) return a == b && m.is_identity();
    return false;
}

// Block instances with source or target inside the window, deduplicated.
std::vector<RawBlock> instances_touching(const GeoMorphism& f, const Window& w) {
    std::set<std::pair<Point, Point>> seen;
    std::vector<RawBlock> out;
    for (const auto& [key, m] : f.blocks()) {
        auto emit = [&](const GroupElem& g) {
            Point a = apply(f.group(), g, key.first);
            Point b = apply(f.group(), g, key.second);
            if (seen.insert({a, b}).second) out.push_back({a, b, m});
        };
        for (const auto& g : elements_mapping_into(f.group(), key.first, w)) emit(g);
        for (const auto& g : elements_mapping_into(f.group(), key.second, w)) emit(g);
    }
    return out;
}

bool predicate_on(PredicateKind kind, const GeoMorphism& f, const SubspaceSpec& Y,
                  const std::optional<Window>& w) {
    if (kind == PredicateKind::Identity && !f.is_endomorphism())
        throw UsageError("identity-on check requires an endomorphism");

    if (Y.is_group_invariant(f.group())) {
        for (const auto& [key, m] : f.blocks())
            if (!check_pair(kind, key.first, key.second, m, Y)) return false;
        if (kind == PredicateKind::Identity) {
            for (const auto& [rep, rank] : f.source().orbit_data())
                if (Y.contains(rep) && f.blocks().find({rep, rep}) == f.blocks().end())
                    return false;
        }
        return true;
    }

    if (!w)
        throw PreconditionError(
            "subspace is not invariant under the group action: a window is required");
    for (const auto& blk : instances_touching(f, *w))
        if (!check_pair(kind, blk.from, blk.to, blk.mat, Y)) return false;
    if (kind == PredicateKind::Identity) {
        for (const auto& [rep, rank] : f.source().orbit_data())
            for (const auto& g : elements_mapping_into(f.group(), rep, *w))
                if (Y.contains(apply(f.group(), g, rep)) &&
                    f.blocks().find({rep, rep}) == f.blocks().end())
                    return false;
    }
    return true;
}

bool predicate_below(PredicateKind kind, const GeoMorphism& f, const SubspaceSpec& Y,
                     const Rational& t_hi) {
    if (kind == PredicateKind::Identity && !f.is_endomorphism())
        throw UsageError("identity-on check requires an endomorphism");
    if (!Y.is_group_invariant(f.group()))
        throw UsageError("height-bounded subspace check requires a group-invariant subspace");
    for (const auto& [key, m] : f.blocks()) {
        if (key.first.t > t_hi && key.second.t > t_hi) continue;
        if (!check_pair(kind, key.first, key.second, m, Y)) return false;
    }
    if (kind == PredicateKind::Identity) {
        for (const auto& [rep, rank] : f.source().orbit_data())
            if (rep.t <= t_hi && Y.contains(rep) &&
                f.blocks().find({rep, rep}) == f.blocks().end())
                return false;
    }
    return true;
}

} // namespace

bool is_zero_on(const GeoMorphism& f, const SubspaceSpec& Y, const std::optional<Window>& w) {
    return predicate_on(PredicateKind::Zero, f, Y, w);
}

bool is_identity_on(const GeoMorphism& f, const SubspaceSpec& Y, const std::optional<Window>& w) {
    return predicate_on(PredicateKind::Identity, f, Y, w);
}

bool is_zero_on_below(const GeoMorphism& f, const SubspaceSpec& Y, const Rational& t_hi) {
    return predicate_below(PredicateKind::Zero, f, Y, t_hi);
}

bool is_identity_on_below(const GeoMorphism& f, const SubspaceSpec& Y, const Rational& t_hi) {
    return predicate_below(PredicateKind::Identity, f, Y, t_hi);
}

bool check_equivariance(Group group, const std::vector<RawBlock>& blocks, const Window& w) {
    std::map<std::pair<Point, Point>, const Matrix<Rational>*> inst;
    for (const auto& b : blocks) {
        auto [it, inserted] = inst.emplace(std::make_pair(b.from, b.to), &b.mat);
        if (!inserted && *it->second != b.mat) return false;
    }
    // Fundamental forms must be consistent across all given instances.
    std::map<std::pair<Point, Point>, const Matrix<Rational>*> fund;
    for (const auto& b : blocks) {
        CanonicalPoint c = canonicalize(group, b.from);
        auto key = std::make_pair(c.rep, apply(group, c.g.inverse(), b.to));
        auto [it, inserted] = fund.emplace(key, &b.mat);
        if (!inserted && *it->second != b.mat) return false;
    }
    // Every translate of a fundamental form with both ends in the window must
    // be present.
    for (const auto& [key, mat] : fund) {
        for (const auto& g : elements_mapping_into(group, key.first, w)) {
            Point a = apply(group, g, key.first);
            Point b = apply(group, g, key.second);
            if (!w.contains(b)) continue;
            auto it = inst.find({a, b});
            if (it == inst.end() || *it->second != *mat) return false;
        }
    }
    return true;
}

bool check_equivariance(const GeoMorphism& f, const Window& w) {
    return check_equivariance(f.group(), f.materialize(w), w);
}

} // namespace ctrlk
