#pragma once

#include <string>
#include <vector>

#include "sfqo/fock.hpp"

namespace sfqo {

enum class Provenance { HhgIrCat, HhgXuvCat, HhgFull, TwoColor };

std::string to_string(Provenance p);

struct ConditionedState {
    CoherentSuperposition state;  // normalized
    Provenance provenance;
    double raw_norm2 = 0.0;       // squared norm before normalization
};

// Mode 0 is the fundamental (initial |alpha_l>), modes 1.. are harmonics (initial vacuum).
// Branch A: shifted product; branch B: -xi_IR xi_HH x initial product.
ConditionedState post_hhg_state(cplx alpha_l, const std::vector<cplx>& chis);

// |alpha + chi> - <alpha|alpha + chi> |alpha>, normalized.
ConditionedState ir_cat(cplx alpha, cplx chi);

// |chi_q> - <0|chi_q> xi_rest |0>, normalized.
ConditionedState xuv_cat(cplx chi_q, double xi_rest);

// |a1 + c1>|a2 + c2> - <a1|a1 + c1><a2|a2 + c2> |a1>|a2>, normalized.
ConditionedState two_color_entangled(cplx alpha1, cplx alpha2, cplx chi1, cplx chi2);

// Projects every mode except `keep` onto the matching coherent amplitude of the first term,
// returning the (unnormalized) single-mode state of the kept mode.
CoherentSuperposition project_onto_shifted(const CoherentSuperposition& s, std::size_t keep);

// Applies 1 - |ref><ref| to s (ref a product coherent state), unnormalized.
CoherentSuperposition remove_component(const CoherentSuperposition& s, const std::vector<cplx>& ref);

}  // namespace sfqo
