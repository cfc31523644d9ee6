#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "pturan/cli/commands.hpp"
#include "pturan/cli/parse.hpp"

using namespace pturan;
using namespace fixtures;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Int binom(long n, long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Independent term formulas for the corpus sequences (raw, unscaled).
Rat oracle(const std::string& name, long n) {
  Rat s = 0;
  if (name == "inverse-catalan") return Rat(n + 1) / Rat(binom(2 * n, n));
  if (name == "involutions") {
    Int a = 1, b = 1, f = 1;  // I_0, I_1
    for (long m = 2; m <= n; ++m) {
      Int c = b + (m - 1) * a;
      a = b;
      b = c;
    }
    for (long m = 2; m <= n; ++m) f *= m;
    return Rat(n == 0 ? a : b) / Rat(f);
  }
  if (name == "fine") {
    Rat f = 1;
    for (long m = 1; m <= n; ++m) f = (Rat(binom(2 * m, m)) / (m + 1) - f) / 2;
    return f;
  }
  for (long k = 0; k <= n; ++k) {
    if (name == "apery") s += Rat(binom(n, k) * binom(n, k) * binom(n + k, k) * binom(n + k, k));
    if (name == "motzkin" && 2 * k <= n) s += Rat(binom(n, 2 * k) * binom(2 * k, k)) / (k + 1);
    if (name == "franel") s += Rat(binom(n, k) * binom(n, k) * binom(n, k));
    if (name == "binomial4") {
      Int c = binom(n, k);
      s += Rat(c * c * c * c);
    }
    if (name == "b") s += Rat(binom(n, k) * binom(n + k, k)) / (2 * k - 1);
    if (name == "domb") s += Rat(binom(n, k) * binom(n, k) * binom(2 * k, k) * binom(2 * (n - k), n - k));
  }
  return s;
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("pturan-cli-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("parsing recurrences") {
  Recurrence cat = parse_recurrence("(4*n+2)*a(n+1) - (n+2)*a(n) = 0 ; a(0)=1");
  CHECK(cat.order() == 1);
  CHECK(cat.canonical_text() == inverse_catalan().canonical_text());

  Recurrence inv = parse_recurrence("n*a(n) - a(n-1) - a(n-2) = 0 ; a(0)=1, a(1)=1");
  CHECK(inv.order() == 2);
  CHECK(inv.canonical_text() == involutions_scaled().canonical_text());

  // both sides, juxtaposition, powers and rational coefficients
  Recurrence m = parse_recurrence("(n+4)a(n+2) = (2n+5)a(n+1) + 3(n+1)a(n) ; a(0)=1, a(1)=1");
  CHECK(m.canonical_text() == motzkin().canonical_text());
  Recurrence half = parse_recurrence("1/2*(n+4)*a(n+2) - (n+5/2)*a(n+1) - 3/2*(n+1)*a(n) = 0; a(0)=1, a(1)=1");
  CHECK(half.canonical_text() == motzkin().canonical_text());
  // rational-function coefficients are cleared
  Recurrence r = parse_recurrence("a(n+1) = a(n)/(n+1) ; a(0)=1");
  CHECK(r.canonical_text() == inverse_factorial().canonical_text());
  Recurrence ap = parse_recurrence("(n+1)^3*a(n+1) - (2n+1)(17n^2+17n+5)a(n) + n^3*a(n-1) = 0 ; a(0)=1, a(1)=5");
  CHECK(ap.canonical_text() == apery().canonical_text());
  CHECK(parse_recurrence("a(n+1) = a(n) ; a(0)=-3/6").initials[0] == Rat(-1, 2));
}

TEST_CASE("parse errors carry positions") {
  auto pos_of = [](const std::string& text) -> long {
    try {
      parse_recurrence(text);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.pos());
    }
    return -1;
  };
  CHECK_THROWS_AS(parse_recurrence("a(n) = a(n)"), SyntaxError);
  CHECK_THROWS_AS(parse_recurrence("a(n) = a(n) ; a(0)=1"), SyntaxError);
  CHECK(pos_of("a(n+1) - # = 0 ; a(0)=1") == 9);
  CHECK(pos_of("a(n+1) - a(n) = 0") == 17);                 // missing initials
  CHECK(pos_of("a(n+1) - a(n) = 0 ; a(1)=1") == 20);        // initials start at a(0)
  CHECK(pos_of("a(n+1) - a(n) = 0 ; a(0)=1/0") >= 0);
  CHECK(pos_of("a(n+1)*a(n) = 0 ; a(0)=1") >= 0);           // not linear
  CHECK(pos_of("a(n+1) = a(n) + 1 ; a(0)=1") >= 0);         // inhomogeneous
  CHECK(pos_of("a(n+1) = a(n)/a(n-1) ; a(0)=1, a(1)=1") >= 0);
  CHECK(pos_of("a(n+1) = a(n) ; a(0)=1") == -1);
  CHECK(pos_of("(n+1)*a(n+1 = a(n) ; a(0)=1") >= 0);
  CHECK(pos_of("a(n) = 3 ; a(0)=1") >= 0);
  // a cancelled top term lowers the order instead
  CHECK(parse_recurrence("0*a(n+1) + a(n) - a(n-1) = 0 ; a(0)=1, a(1)=1").order() == 1);
}

TEST_CASE("operator notation importer") {
  Recurrence b4 = parse_operator_recurrence("(n+2)^3N^2-2(3n^2+9n+7)(2n+3)N-4(n+1)(4n+3)(4n+5)", R({1, 2, 18}));
  CHECK(b4.canonical_text() == binomial4().canonical_text());
  Recurrence m = parse_operator_recurrence("(n+4)N^2 - (2n+5)N - 3(n+1)", R({1, 1}));
  CHECK(m.canonical_text() == motzkin().canonical_text());
  CHECK_THROWS_AS(parse_operator_recurrence("(n+4)N^2 - (2n+5)N - ", R({1, 1})), SyntaxError);
}

TEST_CASE("printing round-trips") {
  for (const auto& e : corpus()) {
    CAPTURE(e.source.name);
    Recurrence rec = e.source.parse();
    Recurrence back = parse_recurrence(print_recurrence(rec));
    CHECK(back.canonical_text() == rec.canonical_text());
  }
  for (const auto& rec : {motzkin(), franel(), b_sequence(), binomial4(), apery(), inverse_factorial()}) {
    CHECK(parse_recurrence(print_recurrence(rec)).canonical_text() == rec.canonical_text());
  }
  CHECK(print_recurrence(motzkin()) == "(n + 4)*a(n+2) + (-2*n - 5)*a(n+1) + (-3*n - 3)*a(n) = 0 ; a(0)=1, a(1)=1");
}

TEST_CASE("corpus terms agree with independent formulas") {
  for (const auto& e : corpus()) {
    CAPTURE(e.source.name);
    auto table = make_table(e.source.parse());
    for (long n = 0; n <= 40; ++n) {
      CAPTURE(n);
      REQUIRE(table->term(n) == oracle(e.source.name, n));
    }
    for (std::size_t i = 0; i < e.terms.size(); ++i) CHECK(oracle(e.source.name, static_cast<long>(i)).get_str() == e.terms[i]);
  }
}

TEST_CASE("command outputs and exit codes") {
  Run t = cli({"terms", "apery", "--to", "5"});
  CHECK(t.code == 0);
  CHECK(t.out == "1, 5, 73, 1445, 33001, 819005\n");

  Run u = cli({"u-asymp", "inverse-catalan", "-K", "5"});
  CHECK(u.code == 0);
  CHECK(u.out.rfind("u_n = 1 - 3/2*n^-2 + 9/4*n^-3 - 21/8*n^-4 + ", 0) == 0);

  Run scaled = cli({"terms", "motzkin/n!", "--to", "3"});
  CHECK(scaled.out == "1, 1, 1, 2/3\n");

  CHECK(cli({"check-turan3", "inverse-catalan"}).code == kExitHolds);
  CHECK(cli({"check-turan3", "binomial4"}).code == kExitFails);
  CHECK(cli({"check-turan3", "--series", "1 - 1/n^2 + O(n^-4)"}).code == kExitInconclusive);
  CHECK(cli({"check-turan3", "--series", "1 - 1/n^2 + 1/n^3"}).code == kExitError);
  CHECK(cli({"check-llc", "inverse-catalan", "--ell", "2"}).code == kExitHolds);
  CHECK(cli({"check-llc", "--series", "1 - 1/n^3 + O(n^-5)"}).code == kExitInconclusive);
  Run bad = cli({"terms", "no-such-sequence", "--to", "3"});
  CHECK(bad.code == kExitError);
  CHECK(bad.err.find("no-such-sequence") != std::string::npos);
  CHECK(cli({"terms", "a(n) = a(n)", "--to", "3"}).code == kExitError);
  CHECK(cli({"frobnicate"}).code == kExitError);
  CHECK(cli({"--help"}).code == 0);

  Run lines = cli({"check-turan3", "motzkin/n!"});
  CHECK(lines.out.rfind("higher-order Turan: holds", 0) == 0);
  CHECK(lines.out.find("rule: alpha1<2, r1<0") != std::string::npos);
}

TEST_CASE("JSON documents") {
  Json s = Json::parse(cli({"--json", "u-asymp", "inverse-catalan", "-K", "3"}).out);
  CHECK(s["schema"] == "pturan-series/1");
  CHECK(s["kind"] == "u");
  CHECK(s["order"] == "5");
  CHECK(s["terms"][1] == Json{{"exponent", "2"}, {"coeff", "-3/2"}});

  Json r = Json::parse(cli({"ratio-asymp", "franel", "-K", "2", "--json"}).out);
  CHECK(r["theta"] == "8");
  CHECK(r["kappa"] == "0");

  Json v = Json::parse(cli({"check-turan3", "inverse-catalan", "--json"}).out);
  CHECK(v["schema"] == "pturan-verdict/1");
  CHECK(v["result"] == "holds-asymptotically");
  CHECK(v["trace"]["r1"] == "-3/2");

  Json e = Json::parse(cli({"--json", "terms", "no-such-sequence", "--to", "3"}).out);
  CHECK(e["schema"] == "pturan-error/1");
}

TEST_CASE("certify and verify through the tool") {
  auto dir = temp_dir("cert");
  const std::string file = (dir / "motzkin.json").string();
  Run c = cli({"certify", "motzkin", "--scale", "n!", "--out", file});
  CHECK(c.code == 0);
  CHECK(c.out.find("{a_n}_{n >= 1} satisfies") != std::string::npos);
  Json doc = Json::parse(std::ifstream(file));
  CHECK(doc["holdsFrom"] == 2);
  CHECK(doc["sequence"]["scaling"] == "/n!");
  CHECK(cli({"--json", "certify", "motzkin/n!"}).out == doc.dump(2) + "\n");

  CHECK(cli({"verify", file, "motzkin"}).code == 0);
  CHECK(cli({"verify", file, "motzkin/n!", "--seed", "7"}).code == 0);
  Run other = cli({"verify", file, "franel"});
  CHECK(other.code == kExitError);
  CHECK(other.out.find("different recurrence") != std::string::npos);

  doc["corners"][3]["threshold"] = 1;
  std::ofstream(dir / "bent.json") << doc.dump(2);
  CHECK(cli({"verify", (dir / "bent.json").string(), "motzkin"}).code == kExitError);

  Run stage = cli({"certify", "involutions"});
  CHECK(stage.code == kExitError);
  CHECK(stage.err.find("stage ratio bounds") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ratio bounds without corners") {
  Run text = cli({"certify", "binomial4", "--bounds-only"});
  CHECK(text.code == 0);
  CHECK(text.out.find("g(n) = (n^2 + 1/2)/(n^2)") != std::string::npos);
  CHECK(text.out.find("f(n) = (n^2 + 5/2)/(n^2)") != std::string::npos);
  Json b = Json::parse(cli({"--json", "certify", "binomial4", "--bounds-only"}).out);
  CHECK(b["schema"] == "pturan-bounds/1");
  CHECK(b["validFrom"].get<long>() <= 200);
  CHECK(b["g"]["terms"][1] == Json{{"exponent", "2"}, {"coeff", "1/2"}});
  CHECK(cli({"certify", "binomial4"}).code == kExitError);
}

TEST_CASE("sources from files and the term cache") {
  auto dir = temp_dir("src");
  std::ofstream(dir / "m.txt") << "(n+4)*a(n+2) - (2*n+5)*a(n+1) - 3*(n+1)*a(n) = 0 ; a(0)=1, a(1)=1\n";
  std::ofstream(dir / "m.json") << Json{{"name", "motzkin"}, {"text", "(n+4)*a(n+2) - (2*n+5)*a(n+1) - 3*(n+1)*a(n) = 0 ; a(0)=1, a(1)=1"}, {"scaling", "/n!"}}.dump();
  std::ofstream(dir / "f.json") << recurrence_to_json(franel()).dump();
  CHECK(cli({"terms", (dir / "m.txt").string(), "--to", "4"}).out == "1, 1, 2, 4, 9\n");
  CHECK(cli({"terms", (dir / "m.json").string(), "--to", "3"}).out == "1, 1, 1, 2/3\n");
  CHECK(cli({"terms", (dir / "f.json").string(), "--to", "3"}).out == "1, 2, 10, 56\n");

  const std::string cache = (dir / "cache").string();
  std::filesystem::create_directories(cache);
  Run first = cli({"--cache-dir", cache, "terms", "apery", "--to", "30"});
  CHECK(!std::filesystem::is_empty(cache));
  Run second = cli({"terms", "apery", "--to", "30", "--cache-dir", cache});
  CHECK(first.out == second.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("corpus run is deterministic for a fixed seed") {
  Run a = cli({"--json", "--seed", "3", "corpus", "run", "--only", "franel"});
  Run b = cli({"corpus", "run", "--only", "franel", "--seed", "3", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Json j = Json::parse(a.out);
  CHECK(j["failed"] == 0);
  CHECK(j["checks"].size() >= 5);
  CHECK(cli({"corpus", "run", "--only", "nothing"}).code == kExitError);
  CHECK(cli({"corpus", "list"}).out.find("domb /n!") != std::string::npos);
}
