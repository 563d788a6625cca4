#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "zigzag/ap_expression.hpp"
#include "zigzag/cli.hpp"
#include "zigzag/errors.hpp"

using namespace zigzag;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> cells(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  std::string cell;
  std::getline(in, cell, '|');
  while (std::getline(in, cell, '|')) {
    const auto first = cell.find_first_not_of(' ');
    const auto last = cell.find_last_not_of(' ');
    out.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  return out;
}

ApCoeff random_coeff(std::mt19937_64& rng, int depth) {
  ApCoeff c;
  const int pick = static_cast<int>(rng() % (depth > 0 ? 3 : 2));
  if (pick == 0) {
    c.kind = ApCoeff::Kind::INTEGER;
    c.value = static_cast<long>(rng() % 50);
  } else if (pick == 1) {
    c.kind = ApCoeff::Kind::UNIT;
  } else {
    c.kind = ApCoeff::Kind::GROUP;
    c.parts.push_back(random_coeff(rng, depth - 1));
    if (rng() % 2) c.parts.push_back(random_coeff(rng, depth - 1));
  }
  return c;
}

ApTerm random_term(std::mt19937_64& rng, bool first) {
  ApTerm t;
  t.negative = rng() % 3 == 0 && !first;
  t.has_p = rng() % 4 != 0;
  if (!t.has_p || rng() % 2) t.coeff = random_coeff(rng, 2);
  if (t.has_p) {
    t.form = static_cast<ApTerm::Exponent>(rng() % 3);
    if (t.form != ApTerm::Exponent::NONE) t.exponent = static_cast<std::int64_t>(rng() % 9);
  }
  return t;
}

}  // namespace

TEST(ParseAp, Examples) {
  const auto p = parse_ap("p", 5);
  EXPECT_EQ(p.slope(), Valuation::integer(1));

  const auto two = parse_ap("2*p^(3/2)", 5);
  EXPECT_EQ(two.slope(), Valuation::halves(3));
  const auto value = std::get<ExactQuadratic>(two.evaluate());
  const auto unit = value / ExactQuadratic::uniformizer_power(two.context, 3);
  EXPECT_EQ(unit.residue(), two.context->field()->from_int(2));

  // (1 + √5)·5^{3/2} = 5√5 + 25.
  const auto worked = parse_ap("(1+1*sqrt(p))*p^(3/2)", 5);
  const auto exact = std::get<ExactQuadratic>(worked.evaluate());
  EXPECT_EQ(exact.rational_part(), BigRational(25));
  EXPECT_EQ(exact.sqrt_part(), BigRational(5));
  EXPECT_EQ(worked.slope(), Valuation::halves(3));
}

TEST(ParseAp, UnitSymbolIsTeichmullerLift) {
  const auto expr = parse_ap("u*p", 7, 2, 12);
  ASSERT_TRUE(std::holds_alternative<PadicElement>(expr.evaluate()));
  const auto& ctx = expr.context;
  const PadicElement expected =
      PadicElement::teichmuller(ctx, ctx->field()->generator()) * PadicElement::uniformizer_power(ctx, 2);
  const PadicElement diff = std::get<PadicElement>(expr.evaluate()) - expected;
  EXPECT_GE(diff.valuation(), Valuation::integer(6));
  EXPECT_EQ(expr.slope(), Valuation::integer(1));
}

TEST(ParseAp, SumsAndSigns) {
  const auto expr = parse_ap("p - 3*p^2 + (2+1*sqrt(p))*p^(5/2)", 7);
  const auto value = std::get<ExactQuadratic>(expr.evaluate());
  // 7 − 147 + (2 + √7)·7²√7 = 7 − 147 + 343 + 98√7.
  EXPECT_EQ(value.rational_part(), BigRational(203));
  EXPECT_EQ(value.sqrt_part(), BigRational(98));
  EXPECT_EQ(expr.to_string(), "p-3*p^2+(2+1*sqrt(p))*p^(5/2)");
}

TEST(ParseAp, PrintParseIsIdentityOnCanonicalForms) {
  for (const std::string text : {"p", "2*p^(3/2)", "(1+1*sqrt(p))*p^(3/2)", "u*p^(1/2)", "-p^2+3", "(u)*p^0+p",
                                 "((1+u*sqrt(p))+2*sqrt(p))*p^3"}) {
    const ApExpression parsed{parse_ap_terms(text), text, nullptr};
    EXPECT_EQ(parsed.to_string(), text);
  }
}

TEST(ParseAp, RandomTreesRoundTrip) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 500; ++trial) {
    ApExpression expr;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) expr.terms.push_back(random_term(rng, i == 0));
    const std::string text = expr.to_string();
    EXPECT_EQ(parse_ap_terms(text), expr.terms) << text;
  }
}

TEST(ParseAp, ErrorsCarryPosition) {
  try {
    parse_ap("2*q", 5);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_ap("", 5), ParseError);
  EXPECT_THROW(parse_ap("p^(3/4)", 5), ParseError);
  EXPECT_THROW(parse_ap("(1+2*sqrt(q))*p", 5), ParseError);
  EXPECT_THROW(parse_ap("p p", 5), ParseError);
}

TEST(ParseAp, SlopeMustBePositive) {
  EXPECT_THROW(parse_ap("1", 5), NonPositiveSlope);
  EXPECT_THROW(parse_ap("p^0", 5), NonPositiveSlope);
  EXPECT_THROW(parse_ap("p^(-1/2)", 5), NonPositiveSlope);
  EXPECT_THROW(parse_ap("p+1", 5), NonPositiveSlope);
  EXPECT_THROW(parse_ap("p-p", 5), ZeroAp);
  EXPECT_NO_THROW(parse_ap("p+p^2", 5));
}

TEST(ParseAp, Monomials) {
  const ApMonomial m = parse_ap_monomial("3*p^(3/2)");
  EXPECT_EQ(m.unit, BigRational(3));
  EXPECT_EQ(m.exponent, Valuation::halves(3));
  EXPECT_EQ(parse_ap_monomial("p^2").exponent, Valuation::integer(2));
  EXPECT_THROW(parse_ap_monomial("p+p^2"), ParseError);
  EXPECT_THROW(parse_ap_monomial("u*p"), ParseError);
}

TEST(Config, ParsesKeys) {
  std::istringstream in(
      "# settings\nprecision = 20\nresidue_degree=4\ncaveat_disk = 2 # wider\nlag_exclusions = p^2, 2*p^3\n"
      "strict = true\n");
  const CliConfig cfg = parse_config(in);
  EXPECT_EQ(cfg.precision, 20);
  EXPECT_EQ(cfg.residue_degree, 4);
  EXPECT_EQ(cfg.engine.caveat_disk, 2);
  EXPECT_TRUE(cfg.engine.strict);
  ASSERT_EQ(cfg.engine.lag_exclusions.size(), 2u);
  EXPECT_EQ(cfg.engine.lag_exclusions[1].unit, BigRational(2));
  EXPECT_EQ(cfg.engine.lag_exclusions[1].exponent, Valuation::integer(3));

  std::istringstream empty("lag_exclusions =\n");
  EXPECT_TRUE(parse_config(empty).engine.lag_exclusions.empty());
}

TEST(Config, Errors) {
  std::istringstream unknown("precision = 3\ncolour = red\n");
  try {
    parse_config(unknown);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream bad_int("precision = many\n");
  EXPECT_THROW(parse_config(bad_int), ParseError);
  std::istringstream no_eq("precision 3\n");
  EXPECT_THROW(parse_config(no_eq), ParseError);
}

TEST(Config, FlagsOverrideFile) {
  const auto path = std::filesystem::temp_directory_path() / "zigzag_cli_test.conf";
  {
    std::ofstream out(path);
    out << "residue_degree = 0\n";
  }
  const std::vector<std::string> predict_args = {"predict", "--p", "5", "--k", "24", "--ap", "p"};
  std::vector<std::string> from_file = {"--config", path.string()};
  from_file.insert(from_file.end(), predict_args.begin(), predict_args.end());
  std::vector<std::string> overridden = {"--config", path.string(), "--residue-degree", "2"};
  overridden.insert(overridden.end(), predict_args.begin(), predict_args.end());

  const auto rejected = run_cli(from_file);
  EXPECT_EQ(rejected.code, 2);
  EXPECT_NE(rejected.err.find("residue degree"), std::string::npos);
  const auto accepted = run_cli(overridden);
  ASSERT_EQ(accepted.code, 0) << accepted.err;
  EXPECT_EQ(accepted.out, run_cli(predict_args).out);

  std::vector<std::string> missing = {"--config", "/nonexistent/zigzag.conf"};
  missing.insert(missing.end(), predict_args.begin(), predict_args.end());
  EXPECT_EQ(run_cli(missing).code, 2);
  std::filesystem::remove(path);
}

TEST(Run, PredictJson) {
  const auto result = run_cli({"predict", "--p", "5", "--k", "24", "--ap", "p"});
  ASSERT_EQ(result.code, 0) << result.err;
  const json doc = json::parse(result.out);
  EXPECT_EQ(doc["kind"], "red");
  EXPECT_EQ(doc["summands"], json::parse(R"([{"a":2,"lambda":"3"},{"a":1,"lambda":"2"}])"));
  EXPECT_EQ(doc["provenance"], "THEOREM_BGR18");
  EXPECT_EQ(doc["v"], "1");

  // Keys are emitted in sorted order.
  std::vector<std::string> keys;
  for (const auto& [key, value] : doc.items()) keys.push_back(key);
  std::size_t last = 0;
  for (const auto& key : keys) {
    const auto at = result.out.find("\"" + key + "\":");
    ASSERT_NE(at, std::string::npos);
    EXPECT_GE(at, last);
    last = at;
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}

TEST(Run, PredictUnknownLambdaIsVisible) {
  // r = 47 sits at τ − t = 1 for b = 5, the conjectural branch RED(2).
  const auto result = run_cli({"predict", "--p", "7", "--k", "49", "--ap", "(1+1*sqrt(p))*p^(5/2)"});
  ASSERT_EQ(result.code, 0) << result.err;
  const json doc = json::parse(result.out);
  EXPECT_EQ(doc["provenance"], "CONJECTURE_ZIGZAG");
  EXPECT_EQ(doc["case"], "RED(2)");
  EXPECT_EQ(doc["summands"][0]["lambda"], "unknown(*_2)");
  EXPECT_EQ(doc["summands"][1]["lambda"], "unknown(*_2^-1)");
}

TEST(Run, PredictMarkdownMatchesGolden) {
  const auto result = run_cli({"predict", "--p", "5", "--k", "21", "--ap", "(1+1*sqrt(p))*p^(3/2)", "--md"});
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_EQ(result.out, read_file(std::filesystem::path(ZIGZAG_SOURCE_DIR) / "tests/golden/predict_p5_k21.md"));
  // τ − t = 1 for r = 19, so the terminal region is selected.
  for (const auto& line : lines(result.out)) {
    if (line.find("<--") != std::string::npos) EXPECT_EQ(cells(line)[0], "τ ≥ t+1");
  }
}

TEST(Run, RegionLabels) {
  EXPECT_EQ(cli::region_label(3, Valuation::halves(-1)), "τ < t");
  EXPECT_EQ(cli::region_label(3, Valuation::halves(0)), "τ = t");
  EXPECT_EQ(cli::region_label(3, Valuation::halves(1)), "t < τ < t+1");
  EXPECT_EQ(cli::region_label(3, Valuation::halves(2)), "τ ≥ t+1");
  EXPECT_EQ(cli::region_label(3, Valuation::halves(7)), "τ ≥ t+1");
  EXPECT_EQ(cli::region_label(4, Valuation::halves(2)), "τ = t+1");
  EXPECT_EQ(cli::region_label(4, Valuation::halves(3)), "τ > t+1");
  EXPECT_EQ(cli::region_label(1, Valuation::infinity()), "τ ≥ t");
}

TEST(Run, SweepCsvAgreesWithPredict) {
  const auto result = run_cli({"sweep", "--p", "5", "--k-range", "20:30", "--ap", "p", "--emit", "csv"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto rows = lines(result.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], "p,k,ap,v,b,tau,t,case,rep,provenance");
  for (std::int64_t k = 20; k <= 30; ++k) {
    const json single = json::parse(run_cli({"predict", "--p", "5", "--k", std::to_string(k), "--ap", "p"}).out);
    const std::string& row = rows[static_cast<std::size_t>(k - 19)];
    EXPECT_EQ(row.rfind("5," + std::to_string(k) + ",p,1,", 0), 0u) << row;
    EXPECT_EQ(row.substr(row.rfind(',') + 1), single["provenance"].get<std::string>());
  }
  EXPECT_EQ(cli::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(cli::csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  EXPECT_EQ(cli::csv_field("plain"), "plain");
}

TEST(Run, FiltrationTable) {
  const auto result = run_cli({"filtration", "--p", "7", "--r", "15", "--imax", "2"});
  ASSERT_EQ(result.code, 0) << result.err;
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines(result.out)) {
    const auto c = cells(line);
    if (c.size() == 7 && !c[0].empty() && std::isdigit(static_cast<unsigned char>(c[0][0]))) rows.push_back(c);
  }
  ASSERT_EQ(rows.size(), 3u);
  for (std::int64_t i = 0; i < 3; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    EXPECT_EQ(std::stoll(row[1]), std::max<std::int64_t>(0, 15 - i * 8 + 1));
  }
  EXPECT_EQ(rows[0][1], "16");
  EXPECT_EQ(rows[1][1], "8");
  EXPECT_EQ(rows[2][4], "0");
  EXPECT_EQ(rows[2][5], "0");
  for (const auto& line : lines(result.out)) {
    if (line.find("column") != std::string::npos) EXPECT_EQ(cells(line)[1], "yes");
  }
  EXPECT_EQ(result.out, read_file(std::filesystem::path(ZIGZAG_SOURCE_DIR) / "tests/golden/filtration_p7_r15.md"));
}

TEST(Run, LocalConstancySuite) {
  const auto result = run_cli({"check", "--suite", "local-constancy", "--p", "5"});
  ASSERT_EQ(result.code, 0) << result.err;
  int conflicts = 0;
  int compatible = 0;
  for (const auto& line : lines(result.out)) {
    const auto c = cells(line);
    if (c.size() != 9 || c[0] != "5") continue;
    if ((c[1] == "4" && c[2] == "p") || (c[1] == "5" && c[2] == "p^(3/2)")) {
      EXPECT_EQ(c[8], "CONFLICT");
      ++conflicts;
    }
    if (c[1] == "3") {
      EXPECT_EQ(c[8], "COMPATIBLE");
      ++compatible;
    }
  }
  EXPECT_EQ(conflicts, 6);
  EXPECT_EQ(compatible, 3);
  EXPECT_EQ(result.out, read_file(std::filesystem::path(ZIGZAG_SOURCE_DIR) / "tests/golden/local_constancy_p5.md"));
}

TEST(Run, OtherSuitesPass) {
  for (const std::string suite : {"blz", "breuil", "theta", "irreducibility", "determinant", "gr19"}) {
    const auto result = run_cli({"check", "--suite", suite});
    EXPECT_EQ(result.code, 0) << suite << "\n" << result.out << result.err;
    EXPECT_NE(result.out.find(", 0 failures"), std::string::npos) << suite;
  }
}

TEST(Run, LlcRoundTrip) {
  const auto map = run_cli({"llc", "--map", "--p", "5", "--input", R"({"kind":"irred","c":7})"});
  ASSERT_EQ(map.code, 0) << map.err;
  const json labels = json::parse(map.out);
  ASSERT_EQ(labels.size(), 1u);
  // ind(ω₂^7) with 7 = (r+1) + s(p+1): r = 0, s = 1.
  EXPECT_EQ(labels[0]["r"], 0);
  EXPECT_EQ(labels[0]["s"], 1);
  const auto unmap = run_cli({"llc", "--unmap", "--p", "5", "--input", labels.dump()});
  ASSERT_EQ(unmap.code, 0) << unmap.err;
  EXPECT_EQ(json::parse(unmap.out), json::parse(R"({"kind":"irred","c":7,"z":"1"})"));

  EXPECT_EQ(run_cli({"llc", "--p", "5", "--input", "{}"}).code, 2);
  EXPECT_EQ(run_cli({"llc", "--map", "--unmap", "--p", "5", "--input", "{}"}).code, 2);
  EXPECT_EQ(run_cli({"llc", "--map", "--p", "5", "--input", "not json"}).code, 2);
}

TEST(Run, HeckeSingleStep) {
  const auto result = run_cli({"hecke", "--p", "3", "--r", "0", "--coeffs", "1", "--apply-t", "1", "--M", "2"});
  ASSERT_EQ(result.code, 0) << result.err;
  const json doc = json::parse(result.out);
  // T of the identity vertex is the sum over its p+1 neighbours.
  EXPECT_EQ(doc["support"].size(), 4u);
  EXPECT_EQ(doc["radius"], 1);
  EXPECT_EQ(doc["total_sum"], json::parse("[4]"));
  EXPECT_EQ(doc["alternating_sum"], json::parse("[5]"));
  for (const auto& entry : doc["support"]) EXPECT_EQ(entry["distance"], 1);

  const auto higher = run_cli({"hecke", "--p", "3", "--r", "1", "--coeffs", "1,2", "--apply-t", "2"});
  ASSERT_EQ(higher.code, 0) << higher.err;
  EXPECT_FALSE(json::parse(higher.out).contains("total_sum"));
  EXPECT_EQ(run_cli({"hecke", "--p", "3", "--r", "1", "--coeffs", "1,2,3"}).code, 2);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"predict", "--p", "5", "--k", "24"}).code, 2);
  EXPECT_EQ(run_cli({"predict", "--p", "5", "--k", "24", "--ap", "p+"}).code, 2);
  EXPECT_EQ(run_cli({"predict", "--p", "5", "--k", "24", "--ap", "p", "--json", "--md"}).code, 2);
  EXPECT_EQ(run_cli({"check", "--suite", "nonsense"}).code, 2);
  EXPECT_EQ(run_cli({"sweep", "--p", "5", "--k-range", "9:3", "--ap", "p"}).code, 2);
  EXPECT_EQ(run_cli({"sweep", "--p", "5", "--k-range", "3:9", "--ap", "p", "--emit", "xml"}).code, 2);
  const auto bad = run_cli({"predict", "--p", "5", "--k", "24", "--ap", "p^(-1/2)"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("NonPositiveSlope"), std::string::npos);
}

TEST(Run, OutputsAreDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"predict", "--p", "7", "--k", "13", "--ap", "p^(3/2)"},
      {"sweep", "--p", "7", "--k-range", "3:40", "--ap", "(2+1*sqrt(p))*p^(3/2)"},
      {"check", "--suite", "gr19", "--p", "5"},
      {"hecke", "--p", "5", "--r", "2", "--coeffs", "1,0,4", "--apply-t", "2"},
  };
  for (const auto& args : commands) {
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    EXPECT_EQ(first.code, second.code);
    EXPECT_EQ(first.out, second.out);
  }
}
