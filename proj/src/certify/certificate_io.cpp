#include "pturan/certify/certificate_io.hpp"

#include "pturan/version.hpp"

namespace pturan {

namespace {

constexpr const char* kSchema = "pturan-certificate/1";

Rat rat_from(const Json& j) {
  Rat r(j.get<std::string>());
  r.canonicalize();
  return r;
}

Json algnum_to_json(const AlgNum& a) { return coeff_strings(a.rep()); }

AlgNum algnum_from(const Json& j, const FieldPtr& field) {
  Poly rep = poly_from_strings(j.get<std::vector<std::string>>());
  if (rep.degree() <= 0) return AlgNum(rep.coeff(0));
  if (!field) throw Error("irrational coefficient without a number field", "certify");
  return AlgNum(field, rep);
}

Json polyk_to_json(const PolyK& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(algnum_to_json(c));
  return out;
}

PolyK polyk_from(const Json& j, const FieldPtr& field) {
  std::vector<AlgNum> c;
  for (const auto& e : j) c.push_back(algnum_from(e, field));
  return PolyK(std::move(c));
}

Json frack_to_json(const FracK& r) { return Json{{"num", polyk_to_json(r.num)}, {"den", polyk_to_json(r.den)}}; }

FracK frack_from(const Json& j, const FieldPtr& field) {
  return {polyk_from(j.at("num"), field), polyk_from(j.at("den"), field)};
}

Json terms_to_json(const std::vector<std::pair<Rat, Rat>>& terms) {
  Json out = Json::array();
  for (const auto& [e, c] : terms) out.push_back(Json{{"exponent", e.get_str()}, {"coeff", c.get_str()}});
  return out;
}

std::vector<std::pair<Rat, Rat>> terms_from(const Json& j) {
  std::vector<std::pair<Rat, Rat>> out;
  for (const auto& t : j) out.emplace_back(rat_from(t.at("exponent")), rat_from(t.at("coeff")));
  return out;
}

}  // namespace

Json recurrence_to_json(const Recurrence& rec) {
  Json coeffs = Json::array();
  for (const auto& p : rec.coeffs) coeffs.push_back(coeff_strings(p));
  Json initials = Json::array();
  for (const auto& v : rec.initials) initials.push_back(v.get_str());
  return Json{{"name", rec.name}, {"coeffs", coeffs}, {"initials", initials}};
}

Recurrence recurrence_from_json(const Json& j) {
  Recurrence rec;
  rec.name = j.value("name", std::string());
  for (const auto& p : j.at("coeffs")) rec.coeffs.push_back(poly_from_strings(p.get<std::vector<std::string>>()));
  for (const auto& v : j.at("initials")) rec.initials.push_back(rat_from(v));
  rec.validate();
  return rec;
}

Json certificate_to_json(const TuranCertificate& cert) {
  Json seq = recurrence_to_json(cert.sequence);
  seq["scaling"] = cert.transform.str();

  Json field = nullptr;
  if (cert.ratio.field) {
    AlgebraicReal th = cert.ratio.field->theta();
    field = Json{{"minpoly", coeff_strings(cert.ratio.field->minpoly())}, {"interval", {th.lo().get_str(), th.hi().get_str()}}};
  }
  Json ratio{{"field", field},
             {"K", cert.ratio.K},
             {"lower", frack_to_json(cert.ratio.lower)},
             {"upper", frack_to_json(cert.ratio.upper)},
             {"inductionThreshold", cert.ratio.induction_threshold},
             {"validFrom", cert.ratio.valid_from}};

  Json bounds{{"g", terms_to_json(cert.bounds.lower_terms)},
              {"f", terms_to_json(cert.bounds.upper_terms)},
              {"scalePower", cert.bounds.scale_power},
              {"stepThreshold", cert.bounds.step_threshold},
              {"validFrom", cert.bounds.valid_from}};

  Json corners = Json::array();
  for (const auto& c : cert.corners) {
    corners.push_back(Json{{"label", c.label},
                           {"num", coeff_strings(c.value.num())},
                           {"den", coeff_strings(c.value.den())},
                           {"threshold", c.threshold}});
  }
  return Json{{"schema", kSchema},
              {"sequence", seq},
              {"ratioBounds", ratio},
              {"bounds", bounds},
              {"corners", corners},
              {"N", cert.N},
              {"initialSegment", {{"from", cert.segment_from}, {"to", cert.segment_to}, {"violations", cert.violations}}},
              {"holdsFrom", cert.holds_from()},
              {"toolVersion", kToolVersion}};
}

TuranCertificate certificate_from_json(const Json& j) {
  try {
    if (j.at("schema").get<std::string>() != kSchema) {
      throw Error("unknown certificate schema '" + j.at("schema").get<std::string>() + "'", "certify");
    }
    TuranCertificate cert;
    cert.sequence = recurrence_from_json(j.at("sequence"));
    cert.transform = Transform::parse(j.at("sequence").at("scaling").get<std::string>());

    const Json& r = j.at("ratioBounds");
    if (!r.at("field").is_null()) {
      Poly minpoly = poly_from_strings(r.at("field").at("minpoly").get<std::vector<std::string>>());
      const Json& iv = r.at("field").at("interval");
      cert.ratio.field = make_field(minpoly, AlgebraicReal(minpoly, rat_from(iv.at(0)), rat_from(iv.at(1))));
    }
    cert.ratio.K = r.at("K").get<int>();
    cert.ratio.lower = frack_from(r.at("lower"), cert.ratio.field);
    cert.ratio.upper = frack_from(r.at("upper"), cert.ratio.field);
    cert.ratio.induction_threshold = r.at("inductionThreshold").get<long>();
    cert.ratio.valid_from = r.at("validFrom").get<long>();

    const Json& b = j.at("bounds");
    cert.bounds.lower_terms = terms_from(b.at("g"));
    cert.bounds.upper_terms = terms_from(b.at("f"));
    cert.bounds.scale_power = b.at("scalePower").get<int>();
    cert.bounds.step_threshold = b.at("stepThreshold").get<long>();
    cert.bounds.valid_from = b.at("validFrom").get<long>();

    const Json& cs = j.at("corners");
    if (!cs.is_array() || cs.size() != 4) throw Error("a certificate has exactly four corners", "certify");
    for (std::size_t i = 0; i < 4; ++i) {
      const Json& c = cs.at(i);
      Poly num = poly_from_strings(c.at("num").get<std::vector<std::string>>());
      Poly den = poly_from_strings(c.at("den").get<std::vector<std::string>>());
      cert.corners[i] = {c.at("label").get<std::string>(), RatFunc(num, den), c.at("threshold").get<long>()};
    }
    cert.N = j.at("N").get<long>();
    const Json& seg = j.at("initialSegment");
    cert.segment_from = seg.at("from").get<long>();
    cert.segment_to = seg.at("to").get<long>();
    cert.violations = seg.at("violations").get<std::vector<long>>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed certificate: ") + e.what(), "certify");
  }
}

}  // namespace pturan
