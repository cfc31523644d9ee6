#include "pturan/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pturan/cli/parse.hpp"
#include "pturan/version.hpp"

namespace pturan {

namespace {

struct Globals {
  bool json = false;
  std::string cache_dir;
  int max_K = 12;
  unsigned seed = 1;
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string sequence_label(const RecurrenceSource& s) {
  std::string name = s.name.empty() ? "a" : s.name;
  return s.scaling.identity() ? name : name + " " + s.scaling.str();
}

template <class C>
Verdict decide(const std::function<Series<C>(int)>& provider, const std::string& criterion, int ell, int K0, int maxK) {
  std::function<Verdict(const UnForm<C>&)> d;
  if (criterion == "turan3") {
    d = [](const UnForm<C>& u) { return turan3_asymptotic(u); };
  } else {
    d = [ell](const UnForm<C>& u) { return llogconcave_asymptotic(u, ell); };
  }
  return decide_with_retry(provider, d, K0, maxK);
}

void print_verdict(std::ostream& out, const Verdict& v, const std::string& title) {
  out << title << ": " << to_string(v.result) << "\n";
  out << "rule: " << v.rule << "\n";
  if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
  if (v.ell > 0) out << "levels established: " << v.ell << "\n";
  for (const auto& [k, val] : v.trace) out << "  " << k << ": " << val << "\n";
}

void print_certificate(std::ostream& out, const TuranCertificate& c, const std::string& label) {
  out << "sequence: " << label << "\n";
  out << "ratio window: K = " << c.ratio.K << ", invariant for n > " << c.ratio.induction_threshold
      << ", valid from n = " << c.ratio.valid_from << "\n";
  out << "u bounds: g(n) = " << to_string(c.bounds.g()) << "\n";
  out << "          f(n) = " << to_string(c.bounds.f()) << "\n";
  out << "          valid from n = " << c.bounds.valid_from << "\n";
  for (const auto& k : c.corners) {
    out << k.label << " = " << to_string(k.value) << " > 0 for n > " << k.threshold << "\n";
  }
  out << "N = " << c.N << "\n";
  out << "initial segment [" << c.segment_from << ", " << c.segment_to << "]: ";
  if (c.violations.empty()) {
    out << "no violations\n";
  } else {
    std::vector<std::string> v;
    for (long n : c.violations) v.push_back(std::to_string(n));
    out << "violations at n = " << join(v, ", ") << "\n";
  }
  out << "holds: the inequality holds for every n >= " << c.holds_from() << ", so {a_n}_{n >= " << c.holds_from() - 1
      << "} satisfies the higher-order Turan inequality\n";
}

Transform with_scale(Transform t, const std::string& scale) {
  if (scale.empty()) return t;
  Transform s = Transform::parse(scale[0] == '/' ? scale : "/" + scale);
  t.scale_power = s.scale_power;
  return t;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path, "cli");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CheckResult check(const CorpusEntry& e, const std::string& name, const std::function<std::string()>& body) {
  CheckResult r{e.source.name, name, false, ""};
  try {
    r.detail = body();
    r.passed = r.detail.empty();
  } catch (const std::exception& ex) {
    r.detail = std::string("error: ") + ex.what();
  }
  return r;
}

Json bound_json(const std::vector<std::pair<Rat, Rat>>& terms, int scale_power) {
  Json t = Json::array();
  for (const auto& [e, c] : terms) t.push_back(Json{{"exponent", e.get_str()}, {"coeff", c.get_str()}});
  return Json{{"terms", t}, {"text", to_string(bound_function(terms, scale_power))}};
}

// Ratio window and u bounds only; the same stages and errors as certify_turan3.
Json bounds_to_json(const Recurrence& rec, const Transform& t, const CertifyOptions& opt) {
  RatioExpansion r;
  RatioBounds rb;
  UBounds ub;
  try {
    r = ratio_expansion(rec, {opt.K, std::nullopt});
  } catch (const std::exception& e) {
    throw Error(std::string("stage ratio expansion: ") + e.what(), "certify");
  }
  try {
    rb = certify_ratio_bounds(rec, r, opt.K, opt.search_limit);
  } catch (const std::exception& e) {
    throw Error(std::string("stage ratio bounds: ") + e.what(), "certify");
  }
  try {
    ub = u_bounds_from_ratio(rec, rb, u_expansion_k(r), opt.u, t.scale_power);
  } catch (const std::exception& e) {
    throw Error(std::string("stage u bounds: ") + e.what(), "certify");
  }
  return Json{{"schema", "pturan-bounds/1"},
              {"sequence", recurrence_to_json(rec)},
              {"scaling", t.str()},
              {"K", rb.K},
              {"ratioValidFrom", rb.valid_from},
              {"g", bound_json(ub.lower_terms, ub.scale_power)},
              {"f", bound_json(ub.upper_terms, ub.scale_power)},
              {"stepThreshold", ub.step_threshold},
              {"validFrom", ub.valid_from}};
}

}  // namespace

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::holds:
      return kExitHolds;
    case Outcome::fails:
      return kExitFails;
    case Outcome::inconclusive:
      break;
  }
  return kExitInconclusive;
}

Json series_to_json(const KSeries& s, const std::string& kind) {
  Json terms = Json::array();
  FieldPtr field;
  for (const auto& [e, c] : s.terms()) {
    terms.push_back(Json{{"exponent", e.get_str()}, {"coeff", to_string(c)}});
    if (c.field()) field = c.field();
  }
  Json f = nullptr;
  if (field) f = Json{{"minpoly", coeff_strings(field->minpoly())}};
  return Json{{"schema", "pturan-series/1"}, {"kind", kind},         {"order", s.order().get_str()},
              {"terms", terms},              {"field", f},            {"text", to_string(s)}};
}

Json verdict_to_json(const Verdict& v, const std::string& criterion) {
  Json trace = Json::object();
  for (const auto& [k, val] : v.trace) trace[k] = val;
  return Json{{"schema", "pturan-verdict/1"},
              {"criterion", criterion},
              {"result", to_string(v.result)},
              {"rule", v.rule},
              {"reason", v.reason},
              {"ell", v.ell},
              {"trace", trace}};
}

std::vector<CheckResult> run_corpus_checks(const CorpusEntry& e, unsigned seed) {
  std::vector<CheckResult> out;
  Recurrence rec;
  out.push_back(check(e, "parse", [&] {
    rec = e.source.parse();
    return std::string();
  }));
  if (!out.back().passed) return out;
  out.push_back(check(e, "round trip", [&] {
    Recurrence back = parse_recurrence(print_recurrence(rec), rec.name);
    return back.canonical_text() == rec.canonical_text() ? "" : "reparsed recurrence differs: " + print_recurrence(back);
  }));
  auto table = make_table(rec);
  out.push_back(check(e, "terms", [&] {
    std::vector<std::string> got;
    for (const Rat& v : table->terms(0, static_cast<long>(e.terms.size()) - 1)) got.push_back(v.get_str());
    return got == e.terms ? "" : "got " + join(got, ", ");
  }));
  if (e.u_series) {
    out.push_back(check(e, "u expansion", [&] {
      std::string got = to_string(u_series_for(rec, e.source.scaling, e.u_K));
      return got == *e.u_series ? "" : "got " + got;
    }));
  }
  if (e.turan3) {
    out.push_back(check(e, "turan3 verdict", [&] {
      std::function<KSeries(int)> p = [&](int K) { return u_series_for(rec, e.source.scaling, K); };
      Verdict v = decide<AlgNum>(p, "turan3", 0, 4, 12);
      return v.result == *e.turan3 ? "" : "got " + to_string(v.result) + " (" + v.rule + ")";
    }));
  }
  if (e.llc_levels > 0) {
    out.push_back(check(e, "log-concavity levels", [&] {
      Verdict v = llogconcave_asymptotic(to_un_form(u_series_for(rec, e.source.scaling, e.llc_K)), e.llc_levels);
      return v.result == Outcome::holds && v.ell >= e.llc_levels ? "" : "got " + to_string(v.result) + " with " + std::to_string(v.ell) + " levels";
    }));
  }
  if (e.certificate) {
    out.push_back(check(e, "certificate", [&] {
      CertifyOptions opt;
      opt.K = e.certificate->K;
      opt.u.denominator = e.certificate->round_to;
      TuranCertificate c = certify_turan3(rec, e.source.scaling, opt);
      std::string why;
      for (std::size_t i = 0; i < 4; ++i) {
        if (c.corners[i].threshold != e.certificate->corner_thresholds[i]) {
          why += c.corners[i].label + " threshold " + std::to_string(c.corners[i].threshold) + "; ";
        }
      }
      if (c.holds_from() - 1 != e.certificate->sequence_start) {
        why += "sequence start " + std::to_string(c.holds_from() - 1) + "; ";
      }
      VerifyReport rep = verify_certificate(c, rec, seed);
      for (const auto& p : rep.problems) why += p + "; ";
      return why;
    }));
  }
  if (e.u_bounds) {
    out.push_back(check(e, "u bounds", [&] {
      RatioExpansion r = ratio_expansion(rec, {4, std::nullopt});
      RatioBounds rb = certify_ratio_bounds(rec, r, 4);
      UBounds ub = u_bounds_from_ratio(rec, rb, u_expansion_k(r));
      std::string why;
      if (to_string(ub.g()) != e.u_bounds->g) why += "g = " + to_string(ub.g()) + "; ";
      if (to_string(ub.f()) != e.u_bounds->f) why += "f = " + to_string(ub.f()) + "; ";
      if (ub.valid_from > e.u_bounds->valid_from_max) why += "valid from " + std::to_string(ub.valid_from);
      return why;
    }));
  }
  if (e.exact_from) {
    out.push_back(check(e, "exact inequality", [&] {
      SequenceView seq(table, e.source.scaling);
      const long from = std::max(*e.exact_from - 1, seq.first_index() + 1);
      auto bad = check_inequality_range(seq, Inequality::turan3, from, e.exact_to);
      if (*e.exact_from > from && (bad.empty() || bad.front() != from)) return "holds already at n = " + std::to_string(from);
      if (!bad.empty() && bad.front() == from && from < *e.exact_from) bad.erase(bad.begin());
      return bad.empty() ? std::string() : "fails at n = " + std::to_string(bad.front());
    }));
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-order Turan and log-concavity analysis of P-recursive sequences", "pturan"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Emit JSON documents");
  app.add_option("--cache-dir", g.cache_dir, "Directory for persisted exact terms");
  app.add_option("--max-K", g.max_K, "Largest expansion length tried when a verdict needs more terms")->check(CLI::Range(1, 200));
  app.add_option("--seed", g.seed, "Seed for sampled checks");

  std::string src, scale, series_text, cert_path, out_path, only;
  long to = 10, from = -1, search_limit = 20000;
  int K = -1, ell = 0, u_terms = 1;
  std::optional<long> round_to;

  auto* terms = app.add_subcommand("terms", "Exact terms of a sequence");
  terms->add_option("src", src, "Corpus name, file or recurrence text")->required();
  terms->add_option("--to", to, "Last index")->required();
  terms->add_option("--from", from, "First index (default: first defined index)");

  auto* ratio = app.add_subcommand("ratio-asymp", "Asymptotic expansion of a(n)/a(n-1)");
  ratio->add_option("src", src)->required();
  ratio->add_option("-K", K, "Number of coefficients")->check(CLI::Range(1, 200));

  auto* uasym = app.add_subcommand("u-asymp", "Asymptotic expansion of u(n) = a(n-1)a(n+1)/a(n)^2");
  uasym->add_option("src", src)->required();
  uasym->add_option("-K", K, "Number of ratio coefficients")->check(CLI::Range(1, 200));

  auto* turan = app.add_subcommand("check-turan3", "Asymptotic higher-order Turan verdict");
  turan->add_option("src", src);
  turan->add_option("--series", series_text, "Decide a closed-form u(n) expansion instead of a recurrence");
  turan->add_option("-K", K, "Initial expansion length")->check(CLI::Range(1, 200));

  auto* llc = app.add_subcommand("check-llc", "Asymptotic l-log-concavity verdict");
  llc->add_option("src", src);
  llc->add_option("--series", series_text, "Decide a closed-form u(n) expansion instead of a recurrence");
  llc->add_option("--ell", ell, "Levels requested (0: as many as the expansion supports)")->check(CLI::NonNegativeNumber);
  llc->add_option("-K", K, "Initial expansion length")->check(CLI::Range(1, 200));

  auto* cert = app.add_subcommand("certify", "Prove the higher-order Turan inequality with an explicit N");
  cert->add_option("src", src)->required();
  cert->add_option("--scale", scale, "Divide by n! or (n!)^k");
  cert->add_option("-K", K, "Window length of the ratio bounds")->check(CLI::Range(1, 50));
  cert->add_option("--u-terms", u_terms, "Nonzero terms of u(n) - 1 kept in the bounds")->check(CLI::Range(1, 10));
  cert->add_option("--round", round_to, "Round the last bound coefficient outward to this denominator")->check(CLI::PositiveNumber);
  cert->add_option("--search-limit", search_limit, "Indices searched for the base case")->check(CLI::PositiveNumber);
  cert->add_option("--out", out_path, "Write the certificate JSON here");
  bool bounds_only = false;
  cert->add_flag("--bounds-only", bounds_only, "Stop after the u(n) bounds and report them");

  auto* ver = app.add_subcommand("verify", "Re-check a certificate against a recurrence");
  ver->add_option("certificate", cert_path)->required()->check(CLI::ExistingFile);
  ver->add_option("src", src)->required();

  auto* corp = app.add_subcommand("corpus", "Bundled sequences");
  auto* corp_run = corp->add_subcommand("run", "Run all golden checks");
  corp_run->add_option("--only", only, "Restrict to one entry");
  auto* corp_list = corp->add_subcommand("list", "List entries");
  corp->require_subcommand(1);

  for (auto* sub : {terms, ratio, uasym, turan, llc, cert, ver, corp, corp_run, corp_list}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  auto report_error = [&](const std::string& stage, const std::string& msg) {
    if (g.json) {
      out << Json{{"schema", "pturan-error/1"}, {"stage", stage}, {"message", msg}}.dump(2) << "\n";
    } else {
      err << "error" << (stage.empty() ? "" : " [" + stage + "]") << ": " << msg << "\n";
    }
    return static_cast<int>(kExitError);
  };

  try {
    auto load = [&] {
      RecurrenceSource s = resolve_source(src);
      return std::make_pair(s, s.parse());
    };

    if (*terms) {
      auto [s, rec] = load();
      SequenceView seq(make_table(rec, g.cache_dir), s.scaling);
      long lo = from < 0 ? seq.first_index() : from;
      std::vector<std::string> vals;
      for (const Rat& v : seq.terms(lo, to)) vals.push_back(v.get_str());
      seq.base()->flush();
      if (g.json) {
        out << Json{{"schema", "pturan-terms/1"}, {"sequence", sequence_label(s)}, {"from", lo}, {"terms", vals}}.dump(2) << "\n";
      } else {
        out << join(vals, ", ") << "\n";
      }
      return 0;
    }

    if (*ratio) {
      auto [s, rec] = load();
      if (s.scaling.phi_level != 0) throw Error("ratio expansions of phi-iterated sequences are not supported", "cli");
      RatioExpansion r = ratio_expansion(rec, {K > 0 ? K : 6, std::nullopt}).scaled(s.scaling.scale_power);
      KSeries S = r.normalized();
      if (g.json) {
        Json j = series_to_json(S, "ratio");
        j["theta"] = to_string(r.theta);
        j["kappa"] = r.kappa.get_str();
        j["rho"] = r.rho;
        if (r.field) j["field"] = Json{{"minpoly", coeff_strings(r.field->minpoly())}};
        out << j.dump(2) << "\n";
      } else {
        out << "a(n)/a(n-1) = " << r.growth_text() << " * S(n)\n";
        out << "S(n) = " << to_string(S) << "\n";
        for (const auto& note : r.notes) out << "note: " << note << "\n";
      }
      return 0;
    }

    if (*uasym) {
      auto [s, rec] = load();
      KSeries u = u_series_for(rec, s.scaling, K > 0 ? K : 3);
      if (g.json) {
        out << series_to_json(u, "u").dump(2) << "\n";
      } else {
        out << "u_n = " << to_string(u) << "\n";
      }
      return 0;
    }

    if (*turan || *llc) {
      const std::string criterion = *turan ? "turan3" : "llc";
      const std::string title = *turan ? "higher-order Turan" : "l-log-concavity";
      Verdict v;
      if (!series_text.empty()) {
        if (!src.empty()) throw Error("give either a source or --series", "cli");
        AsymSeries u = parse_asym_series(series_text);
        v = criterion == "turan3" ? turan3_asymptotic(to_un_form(u)) : llogconcave_asymptotic(to_un_form(u), ell);
      } else {
        if (src.empty()) throw Error("a source or --series is required", "cli");
        auto [s, rec] = load();
        std::function<KSeries(int)> p = [&, rec = rec, t = s.scaling](int k) { return u_series_for(rec, t, k); };
        v = decide<AlgNum>(p, criterion, ell, K > 0 ? K : 4, g.max_K);
      }
      if (g.json) {
        out << verdict_to_json(v, criterion).dump(2) << "\n";
      } else {
        print_verdict(out, v, title);
      }
      return exit_code(v.result);
    }

    if (*cert) {
      auto [s, rec] = load();
      Transform t = with_scale(s.scaling, scale);
      CertifyOptions opt;
      opt.K = K > 0 ? K : 4;
      opt.u.terms = u_terms;
      opt.u.denominator = round_to;
      opt.search_limit = search_limit;
      if (bounds_only) {
        Json j = bounds_to_json(rec, t, opt);
        if (!out_path.empty()) {
          std::ofstream f(out_path);
          if (!(f << j.dump(2) << "\n")) throw Error("cannot write " + out_path, "cli");
        }
        if (g.json) {
          out << j.dump(2) << "\n";
        } else {
          s.scaling = t;
          out << "sequence: " << sequence_label(s) << "\n";
          out << "g(n) = " << j["g"]["text"].get<std::string>() << "\n";
          out << "f(n) = " << j["f"]["text"].get<std::string>() << "\n";
          out << "g(n) < u(n) < f(n) for every n >= " << j["validFrom"].get<long>() << "\n";
        }
        return kExitHolds;
      }
      TuranCertificate c = certify_turan3(rec, t, opt);
      std::string doc = certificate_to_json(c).dump(2) + "\n";
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!(f << doc)) throw Error("cannot write " + out_path, "cli");
      }
      if (g.json) {
        out << doc;
      } else {
        s.scaling = t;
        print_certificate(out, c, sequence_label(s));
        if (!out_path.empty()) out << "certificate written to " << out_path << "\n";
      }
      return kExitHolds;
    }

    if (*ver) {
      auto [s, rec] = load();
      Json j;
      try {
        j = Json::parse(read_text(cert_path));
      } catch (const Json::exception& ex) {
        throw Error(cert_path + ": " + ex.what(), "cli");
      }
      TuranCertificate c = certificate_from_json(j);
      VerifyReport rep = verify_certificate(c, rec, g.seed);
      if (!s.scaling.identity() && !(s.scaling == c.transform)) {
        rep.fail("certificate scaling " + c.transform.str() + " differs from the requested " + s.scaling.str());
      }
      if (g.json) {
        out << Json{{"schema", "pturan-verification/1"}, {"ok", rep.ok}, {"holdsFrom", c.holds_from()}, {"problems", rep.problems}}.dump(2)
            << "\n";
      } else if (rep.ok) {
        out << "certificate verified: the inequality holds for every n >= " << c.holds_from() << "\n";
      } else {
        out << "certificate rejected:\n";
        for (const auto& p : rep.problems) out << "  " << p << "\n";
      }
      return rep.ok ? 0 : kExitError;
    }

    if (*corp_list) {
      for (const auto& e : corpus()) {
        out << e.source.name << (e.source.scaling.identity() ? "" : " " + e.source.scaling.str()) << ": " << e.description
            << (e.externally_sourced ? " [external recurrence]" : "") << "\n";
      }
      return 0;
    }

    if (*corp_run) {
      std::vector<const CorpusEntry*> entries;
      for (const auto& e : corpus()) {
        if (only.empty() || e.source.name == only) entries.push_back(&e);
      }
      if (entries.empty()) throw Error("no corpus entry named '" + only + "'", "cli");
      std::vector<std::vector<CheckResult>> results(entries.size());
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t i = 0; i < entries.size(); ++i) results[i] = run_corpus_checks(*entries[i], g.seed);
      int failed = 0, total = 0;
      Json checks = Json::array();
      for (const auto& rs : results) {
        for (const auto& r : rs) {
          ++total;
          failed += r.passed ? 0 : 1;
          if (g.json) {
            checks.push_back(Json{{"entry", r.entry}, {"check", r.check}, {"passed", r.passed}, {"detail", r.detail}});
          } else {
            out << (r.passed ? "PASS " : "FAIL ") << r.entry << ": " << r.check << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
          }
        }
      }
      if (g.json) {
        out << Json{{"schema", "pturan-corpus/1"}, {"seed", g.seed}, {"checks", checks}, {"failed", failed}}.dump(2) << "\n";
      } else {
        out << total - failed << " of " << total << " checks passed\n";
      }
      return failed == 0 ? 0 : kExitError;
    }
  } catch (const Error& e) {
    return report_error(e.stage(), e.what());
  } catch (const std::exception& e) {
    return report_error("", e.what());
  }
  return kExitError;
}

}  // namespace pturan
