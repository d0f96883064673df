#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "polar/dimensions.hpp"
#include "polar/function_space.hpp"
#include "polar/geometry.hpp"
#include "polar/incidence.hpp"
#include "polar/oracle.hpp"
#include "polar/rank.hpp"
#include "polar/types.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace polar;

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitMismatch = 2;

/// Exact integers: JSON numbers while they fit in 64 bits, decimal strings beyond.
json big(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return to_decimal(v);
}

json modulus_of(std::uint32_t p, std::uint32_t t) { return make_field(p, t)->spec().modulus; }

json header(const char* command) {
  return json{{"command", command}, {"version", POLAR_VERSION}};
}

json signed_digits(DigitSet eps, std::uint32_t t) {
  json out = json::array();
  for (std::uint32_t j = 0; j < t; ++j) {
    if (eps >> j & 1) out.push_back(j);
  }
  return out;
}

struct Output {
  std::string path;
  std::string format = "json";

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream os(path);
    if (!os) throw Error(ErrorKind::IoError, "cannot write " + path);
    os << text;
    if (!os) throw Error(ErrorKind::IoError, "failed writing " + path);
  }
  void emit(const json& j) const { emit(j.dump(2) + "\n"); }
};

struct Shape {
  std::uint32_t m = 2;
  std::uint32_t p = 3;
  std::uint32_t t = 1;
  std::uint32_t r = 0;
};

RankOptions rank_options(unsigned threads) {
  RankOptions o;
  o.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  return o;
}

json report_json(const RankReport& rep) {
  json j = header("verify");
  j["m"] = rep.m;
  j["p"] = rep.p;
  j["t"] = rep.t;
  j["r"] = rep.r;
  j["field_modulus"] = modulus_of(rep.p, rep.t);
  j["formula_rank"] = big(rep.formula_rank);
  j["formula_method"] = rep.formula_method;
  j["formula_seconds"] = rep.formula_seconds;
  j["oracle_rank"] = rep.oracle_rank ? big(*rep.oracle_rank) : json(nullptr);
  j["oracle_seconds"] = rep.oracle_seconds ? json(*rep.oracle_seconds) : json(nullptr);
  j["match"] = rep.match ? json(*rep.match) : json(nullptr);
  j["needs_oracle_confirmation"] = rep.needs_oracle_confirmation;
  return j;
}

int cmd_verify(const Shape& s, const std::string& mode, bool force, std::uint64_t max_cells, unsigned threads,
               const Output& out) {
  const std::uint32_t r = s.r == 0 ? s.m : s.r;
  RankReport rep;
  if (mode == "oracle-only") {
    rep.m = s.m, rep.p = s.p, rep.t = s.t, rep.r = r;
    make_context(s.m, s.p, s.t);
  } else {
    rep = rank_report(s.m, s.p, s.t, r);
  }
  json extra;
  if (mode != "formula-only") {
    const auto oracle = oracle_rank(s.m, s.p, s.t, r, force ? 0 : max_cells, rank_options(threads));
    rep.oracle_rank = BigInt(oracle.rank);
    rep.oracle_seconds = oracle.build_seconds + oracle.rank_seconds;
    extra = {{"rows", oracle.shape.rows},
             {"cols", oracle.shape.cols},
             {"elimination", oracle.streaming ? "streaming" : "dense"}};
    if (mode == "cross-validate") rep.match = rep.formula_rank == *rep.oracle_rank;
  }
  if (mode == "oracle-only") rep.formula_method = "none";
  json j = report_json(rep);
  j["mode"] = mode;
  if (!extra.is_null()) j["oracle"] = extra;
  out.emit(j);
  return rep.match && !*rep.match ? kExitMismatch : kExitOk;
}

int cmd_table(std::uint32_t m, std::vector<std::uint32_t> primes, std::uint32_t t_max, const Output& out) {
  struct Row {
    std::uint32_t p, t;
    BigInt rank;
    std::string method;
  };
  std::vector<Row> rows;
  if (m == 2 && std::find(primes.begin(), primes.end(), 2u) == primes.end()) primes.insert(primes.begin(), 2);
  for (auto p : primes) {
    for (std::uint32_t t = 1; t <= t_max; ++t) {
      if (p == 2) {
        if (m != 2) throw Error(ErrorKind::UnsupportedCharacteristic, "characteristic 2 is tabulated only for m = 2");
        rows.push_back({p, t, rank_W3_char2(t), "char2-recurrence"});
      } else {
        rows.push_back({p, t, rank_trace_formula(m, p, t), "trace"});
      }
    }
  }
  if (out.format == "csv") {
    std::ostringstream os;
    os << "m,p,t,rank,method\n";
    for (auto& r : rows) os << m << ',' << r.p << ',' << r.t << ',' << to_decimal(r.rank) << ',' << r.method << '\n';
    out.emit(os.str());
    return kExitOk;
  }
  json j = header("table");
  j["m"] = m;
  j["rows"] = json::array();
  for (auto& r : rows) j["rows"].push_back({{"p", r.p}, {"t", r.t}, {"rank", big(r.rank)}, {"method", r.method}});
  out.emit(j);
  return kExitOk;
}

int cmd_export(const Shape& s, const std::string& matrix_path, const std::string& matrix_format, bool force,
               std::uint64_t max_cells, const Output& out) {
  const std::uint32_t r = s.r == 0 ? s.m : s.r;
  const auto shape = incidence_shape(s.m, s.p, s.t, r);
  if (!force && shape.cells() > max_cells) {
    throw Error(ErrorKind::ResourceCapExceeded, "incidence matrix exceeds the cell cap; pass --force to override");
  }
  const SymplecticSpace space(s.m, make_field(s.p, s.t));
  const auto M = build_incidence(space, r);
  if (matrix_format == "mm") {
    write_matrix_market(M, std::filesystem::path(matrix_path));
  } else {
    write_matrix(M, std::filesystem::path(matrix_path));
  }
  auto range = [](const std::vector<std::uint32_t>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return json{{"min", v.empty() ? 0 : *lo}, {"max", v.empty() ? 0 : *hi}};
  };
  std::vector<std::uint32_t> row_sums;
  for (auto& row : M.row_data) row_sums.push_back(static_cast<std::uint32_t>(row.size()));
  json j = header("export");
  j["m"] = s.m;
  j["p"] = s.p;
  j["t"] = s.t;
  j["r"] = r;
  j["field_modulus"] = space.F().spec().modulus;
  j["file"] = matrix_path;
  j["format"] = matrix_format;
  j["rows"] = M.rows;
  j["cols"] = M.cols;
  j["nnz"] = M.nnz();
  j["row_sums"] = range(row_sums);
  j["col_sums"] = range(M.column_sums());
  j["checksum"] = matrix_checksum(M);
  out.emit(j);
  return kExitOk;
}

int cmd_rank(const std::string& path, std::uint32_t modulus, bool streaming, unsigned threads, const Output& out) {
  const auto M = read_any_matrix(path, modulus);
  const auto opts = rank_options(threads);
  const auto rank = streaming ? rank_streaming(M, opts) : rank_mod_p(M, opts);
  json j = header("rank");
  j["rows"] = M.rows;
  j["cols"] = M.cols;
  j["modulus"] = M.modulus;
  j["rank"] = rank;
  out.emit(j);
  return kExitOk;
}

int cmd_formula(const Shape& s, std::uint32_t all_t, const Output& out) {
  const std::uint32_t r = s.r == 0 ? s.m : s.r;
  auto one = [&](std::uint32_t t) {
    json j = report_json(rank_report(s.m, s.p, t, r));
    j["command"] = "formula";
    if (r == s.m) j["trace_formula_rank"] = big(rank_trace_formula(s.m, s.p, t));
    return j;
  };
  if (all_t == 0) {
    out.emit(one(s.t));
    return kExitOk;
  }
  json j = header("formula");
  j["reports"] = json::array();
  for (std::uint32_t t = 1; t <= all_t; ++t) j["reports"].push_back(one(t));
  out.emit(j);
  return kExitOk;
}

int cmd_dmatrix(std::uint32_t m, std::uint32_t p, const Output& out) {
  const auto D = build_D_matrix(m, p);
  json j = header("dmatrix");
  j["m"] = m;
  j["p"] = p;
  json rows = json::array();
  for (auto& row : D) {
    json r = json::array();
    for (auto& v : row) r.push_back(big(v));
    rows.push_back(r);
  }
  j["D"] = rows;
  j["trace"] = big(trace(D));
  j["determinant"] = big(determinant(D));
  out.emit(j);
  return kExitOk;
}

int cmd_posets(const Shape& s, std::uint64_t d, bool dot, const Output& out) {
  const auto ctx = make_context(s.m, s.p, s.t);
  const auto S = enumerate_S(ctx, d);
  if (dot) {
    out.emit(hasse_dot(ctx, S));
    return kExitOk;
  }
  auto htypes = [&](const std::vector<HType>& hs) {
    json arr = json::array();
    for (auto& h : hs) {
      json lam = json::array();
      for (auto v : lambda_values(ctx, h)) lam.push_back(v);
      arr.push_back({{"label", label(h)}, {"s", h.s}, {"d", h.d}, {"lambda", lam}});
    }
    return arr;
  };
  json j = header("posets");
  j["m"] = s.m;
  j["p"] = s.p;
  j["t"] = s.t;
  j["d"] = d;
  j["H"] = htypes(enumerate_H(ctx, 0));
  j["H_d"] = htypes(d == 0 ? enumerate_H0(ctx) : enumerate_H(ctx, d));
  json signed_types = json::array();
  for (auto& a : S) {
    signed_types.push_back({{"label", label(a)},
                            {"s", a.s.s},
                            {"eps", signed_digits(a.eps, ctx.t)},
                            {"dim_L", big(dim_L_signed(ctx, a))},
                            {"dim_Y", big(dim_Y_signed(ctx, a))}});
  }
  j["S"] = signed_types;
  json edges = json::array();
  for (auto [lo, hi] : hasse_edges(ctx, S)) edges.push_back({lo, hi});
  j["hasse_edges"] = edges;
  out.emit(j);
  return kExitOk;
}

int cmd_lab(const Shape& s, const LabOptions& options, const Output& out) {
  const auto space = make_function_space(s.m, s.p, s.t);
  const auto suites = verify_lemmas(space, options);
  json j = header("lab verify-lemmas");
  j["m"] = s.m;
  j["p"] = s.p;
  j["t"] = s.t;
  j["field_modulus"] = space->field()->spec().modulus;
  j["seed"] = options.seed;
  bool all = true;
  json arr = json::array();
  for (auto& r : suites) {
    if (!r.skipped) all &= r.passed();
    json suite{{"name", r.name},
               {"checked", r.checked},
               {"failures", r.failures},
               {"passed", r.passed()},
               {"skipped", r.skipped},
               {"counterexamples", r.counterexamples}};
    if (!r.note.empty()) suite["note"] = r.note;
    arr.push_back(suite);
  }
  j["suites"] = arr;
  j["passed"] = all;
  out.emit(j);
  return all ? kExitOk : kExitMismatch;
}

void add_shape(CLI::App* cmd, Shape& s, bool with_r) {
  cmd->add_option("--m", s.m, "Half the vector space dimension")->check(CLI::Range(2u, 16u));
  cmd->add_option("--p", s.p, "Characteristic")->check(CLI::PositiveNumber);
  cmd->add_option("--t", s.t, "Extension degree")->check(CLI::Range(1u, 32u));
  if (with_r) cmd->add_option("--r", s.r, "Flat dimension, 1 <= r <= 2m-1 (default m)");
}

void add_output(CLI::App* cmd, Output& o, std::vector<std::string> formats) {
  cmd->add_option("--out", o.path, "Write output to this file instead of stdout");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(std::move(formats)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact p-ranks of symplectic polar space incidence matrices"};
  app.set_version_flag("--version", std::string(POLAR_VERSION));
  app.require_subcommand(1);

  Shape shape;
  Output out;
  bool force = false;
  unsigned threads = 1;
  std::uint64_t max_cells = kDefaultCellCap;
  int code = kExitOk;
  std::function<int()> run;

  auto* verify = app.add_subcommand("verify", "Cross-validate the rank formula against brute-force elimination");
  std::string mode = "cross-validate";
  add_shape(verify, shape, true);
  add_output(verify, out, {"json"});
  verify->add_option("--mode", mode)->check(CLI::IsMember({"cross-validate", "formula-only", "oracle-only"}));
  verify->add_flag("--force", force, "Ignore the cell cap");
  verify->add_option("--max-cells", max_cells, "Cell cap for brute-force jobs");
  verify->add_option("--threads", threads, "Elimination threads (0 = all cores)");
  verify->callback([&] { run = [&] { return cmd_verify(shape, mode, force, max_cells, threads, out); }; });

  auto* table = app.add_subcommand("table", "Formula ranks for several primes and extension degrees");
  std::vector<std::uint32_t> primes{3, 5, 7};
  std::uint32_t t_max = 3;
  table->add_option("--m", shape.m)->check(CLI::Range(2u, 16u));
  table->add_option("--p", primes, "Primes (repeat or comma separated)")->delimiter(',');
  table->add_option("--t-max", t_max)->check(CLI::Range(1u, 32u));
  add_output(table, out, {"json", "csv"});
  table->callback([&] { run = [&] { return cmd_table(shape.m, primes, t_max, out); }; });

  auto* exporter = app.add_subcommand("export", "Write the incidence matrix and print its metadata");
  std::string matrix_path, matrix_format = "native";
  add_shape(exporter, shape, true);
  exporter->add_option("--matrix", matrix_path, "Matrix file to write")->required();
  exporter->add_option("--matrix-format", matrix_format)->check(CLI::IsMember({"native", "mm"}));
  add_output(exporter, out, {"json"});
  exporter->add_flag("--force", force);
  exporter->add_option("--max-cells", max_cells);
  exporter->callback([&] { run = [&] { return cmd_export(shape, matrix_path, matrix_format, force, max_cells, out); }; });

  auto* ranker = app.add_subcommand("rank", "Rank of a matrix file over its modulus");
  std::string input;
  std::uint32_t modulus = 0;
  bool streaming = false;
  ranker->add_option("matrix", input, "Native or Matrix Market file")->required()->check(CLI::ExistingFile);
  ranker->add_option("--p", modulus, "Modulus for Matrix Market files without a modulus comment");
  ranker->add_flag("--streaming", streaming, "Use the incremental basis instead of dense elimination");
  ranker->add_option("--threads", threads);
  add_output(ranker, out, {"json"});
  ranker->callback([&] { run = [&] { return cmd_rank(input, modulus, streaming, threads, out); }; });

  auto* formula = app.add_subcommand("formula", "Rank formula report");
  std::uint32_t all_t = 0;
  add_shape(formula, shape, true);
  formula->add_option("--all-t", all_t, "Report every t from 1 to N");
  add_output(formula, out, {"json"});
  formula->callback([&] { run = [&] { return cmd_formula(shape, all_t, out); }; });

  auto* dmatrix = app.add_subcommand("dmatrix", "The transfer matrix D");
  dmatrix->add_option("--m", shape.m)->check(CLI::Range(2u, 16u));
  dmatrix->add_option("--p", shape.p);
  add_output(dmatrix, out, {"json"});
  dmatrix->callback([&] { run = [&] { return cmd_dmatrix(shape.m, shape.p, out); }; });

  auto* posets = app.add_subcommand("posets", "H-type and signed-type posets");
  std::uint64_t degree = 0;
  bool dot = false;
  add_shape(posets, shape, false);
  posets->add_option("--d", degree, "Degree class modulo q-1");
  posets->add_flag("--dot", dot, "Emit the signed Hasse diagram in DOT");
  add_output(posets, out, {"json"});
  posets->callback([&] { run = [&] { return cmd_posets(shape, degree, dot, out); }; });

  auto* lab = app.add_subcommand("lab", "Function-space laboratory");
  lab->require_subcommand(1);
  auto* lemmas = lab->add_subcommand("verify-lemmas", "Check the operator lemmas on k[V]");
  LabOptions lab_options;
  add_shape(lemmas, shape, false);
  lemmas->add_option("--samples", lab_options.random_samples, "Random monomials when not exhaustive");
  lemmas->add_option("--seed", lab_options.seed);
  lemmas->add_option("--exhaustive-limit", lab_options.exhaustive_limit);
  lemmas->add_option("--projector-max-q", lab_options.projector_max_q);
  add_output(lemmas, out, {"json"});
  lemmas->callback([&] { run = [&] { return cmd_lab(shape, lab_options, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitOperational;
  }
  try {
    code = run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOperational;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOperational;
  }
  return code;
}
