#pragma once

#include <json.hpp>
#include <string>

#include "pturan/certify/certify.hpp"

namespace pturan {

using Json = nlohmann::ordered_json;

Json recurrence_to_json(const Recurrence& rec);
Recurrence recurrence_from_json(const Json& j);

/// Versioned certificate document with a fixed key order, so equal
/// certificates serialize to identical bytes.
Json certificate_to_json(const TuranCertificate& cert);
/// Throws Error on a malformed document or an unknown schema.
TuranCertificate certificate_from_json(const Json& j);

}  // namespace pturan
