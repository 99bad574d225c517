#pragma once

// Named model registry shared by the CLI and the acceptance suite.
//
//   cpn           constant-HBSC space form M_c of dimension n (default c = 1)
//   hyperquadric  the hyperquadric in CP^{n+1} with the induced metric
//   product-cp1   (CP^1, 2/(n+1) w_FS)^n, factor HSC n + 1

#include <stdexcept>
#include <string>
#include <vector>

#include "kgeo/curvature.hpp"

namespace kgeo::catalog {

using curvature::ModelSpace;

inline std::vector<std::string> names() { return {"cpn", "hyperquadric", "product-cp1"}; }

inline ModelSpace make_model(const std::string& name, int n, double c = 1.0) {
  if (n < 1) throw std::invalid_argument("make_model: dimension must be >= 1");
  if (name == "cpn") return ModelSpace::space_form(n, c);
  if (name == "hyperquadric") return ModelSpace::hyperquadric(n);
  if (name == "product-cp1") {
    std::vector<ModelSpace> factors;
    factors.reserve(n);
    for (int i = 0; i < n; ++i)
      factors.push_back(ModelSpace::scaled(ModelSpace::space_form(1, 1.0), 2.0 / (n + 1.0)));
    return ModelSpace::product(std::move(factors));
  }
  throw std::invalid_argument("make_model: unknown model '" + name + "'");
}

}  // namespace kgeo::catalog
