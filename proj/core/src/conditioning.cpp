#include "sfqo/conditioning.hpp"

#include <stdexcept>

namespace sfqo {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::HhgIrCat: return "HHG_IR_CAT";
        case Provenance::HhgXuvCat: return "HHG_XUV_CAT";
        case Provenance::HhgFull: return "HHG_FULL";
        case Provenance::TwoColor: return "TWO_COLOR";
    }
    return "UNKNOWN";
}

namespace {
ConditionedState finish(CoherentSuperposition s, Provenance p) {
    double n2 = s.norm2();
    return {s.normalized(), p, n2};
}
}  // namespace

CoherentSuperposition remove_component(const CoherentSuperposition& s, const std::vector<cplx>& ref) {
    CoherentSuperposition out(s);
    cplx proj = inner(CoherentSuperposition::product(ref), s);
    out.add(-proj, ref);
    return out;
}

ConditionedState post_hhg_state(cplx alpha_l, const std::vector<cplx>& chis) {
    if (chis.empty()) throw std::invalid_argument("post_hhg_state: need at least the fundamental mode");
    bool any = false;
    for (auto c : chis) any = any || std::abs(c) > 0.0;
    if (!any) throw std::invalid_argument("post_hhg_state: all chi are zero, conditioned state has zero norm");
    std::vector<cplx> init(chis.size(), 0.0), shifted(chis.size());
    init[0] = alpha_l;
    for (std::size_t k = 0; k < chis.size(); ++k) shifted[k] = init[k] + chis[k];
    cplx xi_ir = overlap(init[0], shifted[0]);
    cplx xi_hh = 1.0;
    for (std::size_t k = 1; k < chis.size(); ++k) xi_hh *= overlap(0.0, chis[k]);
    CoherentSuperposition s(chis.size());
    s.add(1.0, shifted);
    s.add(-xi_ir * xi_hh, init);
    return finish(std::move(s), Provenance::HhgFull);
}

ConditionedState ir_cat(cplx alpha, cplx chi) {
    if (std::abs(chi) == 0.0) throw std::invalid_argument("ir_cat: chi must be nonzero");
    CoherentSuperposition s(1);
    s.add(1.0, {alpha + chi});
    s.add(-overlap(alpha, alpha + chi), {alpha});
    return finish(std::move(s), Provenance::HhgIrCat);
}

ConditionedState xuv_cat(cplx chi_q, double xi_rest) {
    if (std::abs(chi_q) == 0.0) throw std::invalid_argument("xuv_cat: chi_q must be nonzero");
    if (!(xi_rest >= 0.0 && xi_rest <= 1.0)) throw std::invalid_argument("xuv_cat: xi_rest must be in [0, 1]");
    CoherentSuperposition s(1);
    s.add(1.0, {chi_q});
    if (xi_rest > 0.0) s.add(-overlap(0.0, chi_q) * xi_rest, {0.0});
    return finish(std::move(s), Provenance::HhgXuvCat);
}

ConditionedState two_color_entangled(cplx a1, cplx a2, cplx c1, cplx c2) {
    if (std::abs(c1) == 0.0 && std::abs(c2) == 0.0)
        throw std::invalid_argument("two_color_entangled: both chi are zero");
    CoherentSuperposition s(2);
    s.add(1.0, {a1 + c1, a2 + c2});
    s.add(-overlap(a1, a1 + c1) * overlap(a2, a2 + c2), {a1, a2});
    return finish(std::move(s), Provenance::TwoColor);
}

CoherentSuperposition project_onto_shifted(const CoherentSuperposition& s, std::size_t keep) {
    if (s.terms().empty()) return CoherentSuperposition(1);
    const auto& ref = s.terms().front().amps;
    CoherentSuperposition out(1);
    for (const auto& t : s.terms()) {
        cplx w = t.coeff;
        for (std::size_t k = 0; k < s.n_modes(); ++k)
            if (k != keep) w *= overlap(ref[k], t.amps[k]);
        out.add(w, {t.amps[keep]});
    }
    return out.merged();
}

}  // namespace sfqo
