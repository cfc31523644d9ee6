#include "pturan/cli/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pturan/certify/certificate_io.hpp"
#include "pturan/cli/parse.hpp"

namespace pturan {

namespace {

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  const Transform raw{}, fact{1, 0};

  {
    CorpusEntry e;
    e.source = {"inverse-catalan", "(4*n+2)*a(n+1) - (n+2)*a(n) = 0 ; a(0)=1", raw};
    e.description = "1/C_n, reciprocals of the Catalan numbers";
    e.terms = {"1", "1", "1/2", "1/5", "1/14", "1/42", "1/132", "1/429"};
    e.terms_source = "oracle: (n+1)!n!/(2n)! evaluated directly";
    e.u_series = "1 - 3/2*n^-2 + 9/4*n^-3 - 21/8*n^-4 + O(n^-5)";
    e.u_K = 3;
    e.u_source = "published expansion of u_n, first three terms";
    e.turan3 = Outcome::holds;
    e.llc_levels = 2;
    e.llc_K = 3;
    e.exact_from = 1;
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"involutions", "n*a(n) - a(n-1) - a(n-2) = 0 ; a(0)=1, a(1)=1", raw};
    e.description = "I_n/n!, involutions of an n-set divided by n!";
    e.terms = {"1", "1", "1", "2/3", "5/12", "13/60", "19/180", "29/630"};
    e.terms_source = "oracle: I_n = I_(n-1) + (n-1) I_(n-2) divided by n!";
    e.u_series = "1 - 1/2*n^-1 - 1/4*n^(-3/2) + 5/8*n^-2 + O(n^(-5/2))";
    e.u_K = 2;
    e.u_source = "published expansion of u_n";
    e.turan3 = Outcome::holds;
    e.llc_levels = 6;
    e.llc_K = 12;
    e.exact_from = 7;
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"apery", "(n+2)^3*a(n+2) - (2*n+3)*(17*n^2+51*n+39)*a(n+1) + (n+1)^3*a(n) = 0 ; a(0)=1, a(1)=5", fact};
    e.description = "Apery numbers sum_k C(n,k)^2 C(n+k,k)^2, scaled by n!";
    e.terms = {"1", "5", "73", "1445", "33001", "819005"};
    e.terms_source = "oracle: the binomial sum evaluated directly for n <= 5";
    e.turan3 = Outcome::holds;
    e.llc_levels = 6;
    e.llc_K = 8;
    e.exact_from = 2;
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"motzkin", "(n+4)*a(n+2) - (2*n+5)*a(n+1) - 3*(n+1)*a(n) = 0 ; a(0)=1, a(1)=1", fact};
    e.description = "Motzkin numbers scaled by n!";
    e.terms = {"1", "1", "2", "4", "9", "21", "51", "127", "323"};
    e.terms_source = "oracle: sum_k C(n,2k) C_k evaluated directly";
    e.turan3 = Outcome::holds;
    e.certificate = ExpectedCertificate{4, std::nullopt, {0, 4, 4, 3}, 1, "published corner thresholds and claim n >= 1"};
    e.exact_from = 2;
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"franel",
                "(n+2)^2*a(n+2) - (7*n^2+21*n+16)*a(n+1) - 8*(n+1)^2*a(n) = 0 ; a(0)=1, a(1)=2", fact};
    e.description = "Franel numbers sum_k C(n,k)^3 scaled by n!";
    e.terms = {"1", "2", "10", "56", "346", "2252", "15184"};
    e.terms_source = "oracle: the binomial sum evaluated directly";
    e.turan3 = Outcome::holds;
    e.certificate = ExpectedCertificate{4, std::nullopt, {0, 3, 3, 2}, 1, "published corner thresholds and claim n >= 1"};
    e.exact_from = 2;
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"binomial4",
                "(n+2)^3*a(n+2) - 2*(3*n^2+9*n+7)*(2*n+3)*a(n+1) - 4*(n+1)*(4*n+3)*(4*n+5)*a(n) = 0 ; a(0)=1, a(1)=2, a(2)=18",
                raw};
    e.description = "sum_k C(n,k)^4";
    e.terms = {"1", "2", "18", "164", "1810", "21252", "263844"};
    e.terms_source = "oracle: the binomial sum evaluated directly";
    e.turan3 = Outcome::fails;
    e.u_bounds = ExpectedUBounds{"(n^2 + 1/2)/(n^2)", "(n^2 + 5/2)/(n^2)", 200, "published bound pair; the published N is 94"};
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"b", "(n+3)*a(n+3) - (7*n+13)*a(n+2) + (7*n+15)*a(n+1) - (n+1)*a(n) = 0 ; a(0)=-1, a(1)=1, a(2)=7", fact};
    e.description = "b_n = sum_k C(n,k) C(n+k,k)/(2k-1), scaled by n!";
    e.terms = {"-1", "1", "7", "25", "87", "329", "1359"};
    e.terms_source = "oracle: the defining sum evaluated directly";
    e.turan3 = Outcome::holds;
    e.certificate = ExpectedCertificate{4, 1, {0, 6, 5, 3}, 0, "corner thresholds recomputed exactly; published claim n >= 0"};
    e.exact_from = 1;
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"fine", "2*(n+1)*a(n) = (7*n-5)*a(n-1) + 2*(2*n-1)*a(n-2) ; a(0)=1, a(1)=0", fact};
    e.description = "Fine numbers scaled by n!; recurrence from a standard reference";
    e.externally_sourced = true;
    e.terms = {"1", "0", "1", "2", "6", "18", "57", "186", "622", "2120"};
    e.terms_source = "oracle: C_n = 2 F_n + F_(n-1) with Catalan numbers C_n";
    e.exact_from = 4;
    out.push_back(e);
  }
  {
    CorpusEntry e;
    e.source = {"domb",
                "(n+2)^3*a(n+2) - 2*(2*n+3)*(5*n^2+15*n+12)*a(n+1) + 64*(n+1)^3*a(n) = 0 ; a(0)=1, a(1)=4", fact};
    e.description = "Domb numbers scaled by n!; recurrence from a standard reference";
    e.externally_sourced = true;
    e.terms = {"1", "4", "28", "256", "2716", "31504", "387136"};
    e.terms_source = "oracle: sum_k C(n,k)^2 C(2k,k) C(2(n-k),n-k) evaluated directly";
    e.exact_from = 1;
    out.push_back(e);
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot read " + p.string(), "cli");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RecurrenceSource from_json(const Json& j, const std::string& fallback_name) {
  RecurrenceSource s;
  const Json& doc = j.contains("sequence") ? j.at("sequence") : j;
  s.name = doc.value("name", fallback_name);
  if (doc.contains("scaling")) s.scaling = Transform::parse(doc.at("scaling").get<std::string>());
  if (doc.contains("text")) {
    s.text = doc.at("text").get<std::string>();
  } else {
    Recurrence rec = recurrence_from_json(doc);
    s.text = print_recurrence(rec);
  }
  return s;
}

}  // namespace

Recurrence RecurrenceSource::parse() const { return parse_recurrence(text, name); }

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry* find_corpus_entry(const std::string& name) {
  for (const auto& e : corpus()) {
    if (e.source.name == name) return &e;
  }
  return nullptr;
}

RecurrenceSource resolve_source(const std::string& arg) {
  if (arg.find('=') != std::string::npos) return {"", arg, {}};
  // corpus name, optionally followed by a scaling tag
  std::size_t cut = arg.find_first_of("/ ");
  std::string head = arg.substr(0, cut);
  if (const CorpusEntry* e = find_corpus_entry(head)) {
    RecurrenceSource s = e->source;
    s.scaling = cut == std::string::npos ? Transform{} : Transform::parse(arg.substr(cut));
    return s;
  }
  std::filesystem::path p(arg);
  if (std::filesystem::is_regular_file(p)) {
    std::string body = read_file(p);
    if (p.extension() == ".json") {
      try {
        return from_json(Json::parse(body), p.stem().string());
      } catch (const Json::exception& ex) {
        throw Error(p.string() + ": " + ex.what(), "cli");
      }
    }
    return {p.stem().string(), body, {}};
  }
  throw Error("'" + arg + "' is neither a corpus name, a file nor a recurrence", "cli");
}

}  // namespace pturan
