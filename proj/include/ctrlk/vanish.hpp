#pragma once

#include <string>
#include <vector>

#include "ctrlk/squeeze.hpp"

namespace ctrlk {

/// A block recorded as evidence when a verification flag fails.
struct VanishOffender {
    std::string flag;
    int target_layer = 0, source_layer = 0;
    Point from, to;
    Matrix<Rational> mat;
    std::string note;
};

struct VanishReport {
    Rational input_hsize, input_inv_hsize;
    Rational schedule_step;
    int layers = 0;
    Window window;
    bool beta_matches_closed_form = false;
    bool beta_restricts = false;
    bool beta_identity_on_v = false;
    bool eta_mu_invertible = false;
    std::vector<VanishOffender> counterexamples;

    bool all_ok() const {
        return beta_matches_closed_form && beta_restricts && beta_identity_on_v &&
               eta_mu_invertible;
    }
};

/// Picks layer heights so that, above tau(n) - 5K, every component of the
/// automorphism pair and of the squeezed clipped layers 1 < j < n has
/// horizontal reach at most 1/(30 n). Certifies the condition by scanning
/// the supports up to layer N; throws PreconditionError when no affine
/// schedule can satisfy it (in particular when hsize >= 1/30). For inputs at
/// base height with K = 0 this returns the unit-step schedule.
LayerSchedule select_schedule(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                              const Rational& K, int N, const IntervalSpec& I);

/// The two 6-factor products of block-elementary morphisms on the truncated
/// stack. mu acts on layers >= 2 and is stored extended by the identity on
/// layer 1. Inverses are the reversed products of negated factors; factor
/// lists are retained as the invertibility witness.
struct EtaMu {
    LayerSum stack;
    LayerMorphism eta, eta_inv;
    LayerMorphism mu, mu_inv;
    std::vector<LayerMorphism> eta_factors, mu_factors;
};

EtaMu build_eta_mu(const GeoMorphism& alpha, const GeoMorphism& alpha_inv, const IntervalSpec& I,
                   const LayerSchedule& sched, int N);

/// beta = eta . (alpha + mu), computed by explicit composition.
LayerMorphism build_beta_product(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                                 const IntervalSpec& I, const LayerSchedule& sched, int N);

/// beta assembled column by column from the closed-form block formulas.
LayerMorphism build_beta_closed(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                                const IntervalSpec& I, const LayerSchedule& sched, int N);

/// Shift offset 1/(4 L), L the lcm of the support denominators: moves every
/// support point off the integers and half-integers.
Rational default_preshift(const GeoModule& m);

/// Runs the whole pipeline: schedule selection, eta/mu, both betas, and the
/// four verification flags, certified within the window. Preconditions
/// (1/30-automorphism, support off integers and half-integers relative to I,
/// truncation margin) throw PreconditionError instead of reporting flags.
VanishReport verify_vanishing(const GeoMorphism& alpha, const GeoMorphism& alpha_inv,
                              const IntervalSpec& I, int N, const Window& w);

} // namespace ctrlk
