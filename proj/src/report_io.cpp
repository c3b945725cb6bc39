#include "invis/report_io.hpp"

#include <json.hpp>

namespace invis {

namespace {

using json = nlohmann::json;

json complex_json(cplx c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json residual_json(cplx r, double scale) {
  return json{{"re", r.real()}, {"im", r.imag()}, {"abs", std::abs(r)}, {"rel", std::abs(r) / scale}};
}

}  // namespace

std::string report_json(const ConditionReport& r) {
  json spec{{"m0", r.spec.m0},
            {"j0", r.spec.j0 ? json(*r.spec.j0) : json(nullptr)},
            {"n0", r.spec.n0},
            {"L_um", r.spec.length},
            {"k0_per_um", r.spec.k0},
            {"k1_per_um", r.spec.k1},
            {"k_per_um", r.spec.k()},
            {"lambda_nm", r.spec.lambda_nm()}};
  json doc{{"spec", spec},
           {"v_plus", complex_json(r.triple.v_plus)},
           {"v_minus", complex_json(r.triple.v_minus)},
           {"v_zero", complex_json(r.triple.v_zero)},
           {"res_left", residual_json(r.res_left, r.scale)},
           {"res_right", residual_json(r.res_right, r.scale)},
           {"res_transmission", residual_json(r.res_transmission, r.scale)},
           {"scale", r.scale},
           {"tol", r.tol},
           {"phase_ok", r.phase_ok},
           {"ratio_theorem1", r.ratio_theorem1 ? complex_json(*r.ratio_theorem1) : json(nullptr)},
           {"verdict", to_string(r.verdict)},
           {"epsilon", r.epsilon ? json(*r.epsilon) : json(nullptr)}};
  return doc.dump(2) + "\n";
}

}  // namespace invis
