#pragma once

#include "toolkit/exact/matrix.hpp"
#include "toolkit/exact/poly.hpp"
#include <json.hpp>

namespace toolkit {

// Canonical JSON forms shared by every CLI surface: integers as decimal
// strings, rationals as "p/q" (or "p" when integral), polynomials as
// coefficient arrays with constant term first.

nlohmann::json to_json(const BigInt& x);
nlohmann::json to_json(const BigRat& x);
nlohmann::json to_json(const QPoly& p);
nlohmann::json to_json(const QMat& m);
nlohmann::json to_json(const ZMat& m);

BigInt bigint_from_json(const nlohmann::json& j);
BigRat bigrat_from_json(const nlohmann::json& j);
QPoly qpoly_from_json(const nlohmann::json& j);
QMat qmat_from_json(const nlohmann::json& j);
ZMat zmat_from_json(const nlohmann::json& j);

} // namespace toolkit
