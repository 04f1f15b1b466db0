#pragma once

// JSON and CSV serialization. Reals are JSON numbers in double precision and
// decimal strings at higher precision, so no digits are lost.

#include "tancascade/attractor.hpp"
#include "tancascade/cascade.hpp"
#include "tancascade/cycles.hpp"
#include "tancascade/renorm.hpp"
#include "tancascade/transversal.hpp"

#include <json.hpp>

#include <string>

namespace tancascade {

using json = nlohmann::ordered_json;

template <class Real>
json real_json(const Real& x);

template <class Real>
json cascade_json(const CascadeTable<Real>& table);

// Columns: n, alpha, beta, residual_alpha, residual_beta
template <class Real>
std::string cascade_csv(const CascadeTable<Real>& table);

template <class Real>
json cycle_json(const Cycle<Real>& cycle);

template <class Real>
json renorm_json(const RenormLevel<Real>& level, bool renormalizable);

template <class Real>
json transversal_json(const Certificate<Real>& cert);

template <class Real>
json attractor_json(const CantorSystem<Real>& system, const VerificationReport& report);

// Columns: level, side, index, left, right, kind
template <class Real>
std::string attractor_csv(const CantorSystem<Real>& system);

}  // namespace tancascade
