#pragma once

// JSON encodings of library values. Scalars and polynomials are written in
// the input syntax, so every string field parses back under the stated ring.
// The layouts are documented in docs/json-schemas.md.

#include <json.hpp>

#include "isojet/contact.hpp"
#include "isojet/derlog.hpp"
#include "isojet/hs.hpp"
#include "isojet/isoscan.hpp"
#include "isojet/tangent.hpp"

namespace isojet {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const TruncPoly& p);
Json to_json(const std::vector<TruncPoly>& ps);
Json to_json(const PolyMatrix& m);
Json to_json(const RingSpec& r);
Json to_json(const PolySystem& f);
Json to_json(const Subspace& s);
Json to_json(const ContactElement& g);
Json to_json(const Fingerprint& fp);
Json to_json(const Derivation& d);
Json to_json(const Infeasible& inf);
Json to_json(const InseparabilityCertificate& c);
Json to_json(const SplitResult& s);
Json to_json(const HSDerivation& d);
Json to_json(const HSViolation& v);
Json to_json(const HSVerifyReport& r);
Json to_json(const HSSearchResult& r);
Json to_json(const ScanReport& r);
Json to_json(const EquivalenceAssessment& a);

/// {"matrix": [[...]], "phi": [...]} read under `spec`.
ContactElement contact_element_from_json(const Json& j, const RingSpec& spec);

}  // namespace isojet
