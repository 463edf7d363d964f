#pragma once

// Command-line front end: argument parsing, the five commands, and CSV /
// JSONL table output. Kept in a header so tests can drive it in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fibcf/construct.hpp"
#include "fibcf/dioph.hpp"
#include "fibcf/exactnum.hpp"
#include "fibcf/verify.hpp"

namespace fibcf::cli {

enum class Format { Csv, Jsonl };

struct RunConfig {
  std::string command;
  unsigned long a = 1, b = 2;
  unsigned i_max = 10;
  std::vector<std::uint64_t> X_list;
  long H = 0;
  BigRat delta{1, 10};
  unsigned precision_digits = 200;
  Format format = Format::Csv;
  unsigned threads = 1;
  std::string out;  // empty: standard output
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUndecided = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tables

struct Cell {
  enum class Kind { Int, Str, Bool, Null };
  Kind kind = Kind::Null;
  std::string text;

  static Cell integer(long long v) { return {Kind::Int, std::to_string(v)}; }
  static Cell str(std::string s) { return {Kind::Str, std::move(s)}; }
  static Cell boolean(bool v) { return {Kind::Bool, v ? "true" : "false"}; }
  static Cell null() { return {}; }
};

/// Rows of one record type followed by a single summary record.
struct Table {
  std::string row_type;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> summary_columns;
  std::vector<Cell> summary;
};

inline void write_csv_line(std::ostream& os, const std::string& first, const std::vector<std::string>& rest) {
  os << first;
  for (const auto& s : rest) os << ',' << s;
  os << '\n';
}

inline void write_csv(std::ostream& os, const Table& t) {
  auto texts = [](const std::vector<Cell>& cells) {
    std::vector<std::string> v;
    for (const auto& c : cells) v.push_back(c.text);
    return v;
  };
  write_csv_line(os, "type", t.columns);
  for (const auto& r : t.rows) write_csv_line(os, t.row_type, texts(r));
  write_csv_line(os, "type", t.summary_columns);
  write_csv_line(os, "summary", texts(t.summary));
}

inline nlohmann::ordered_json json_object(const std::string& type, const std::vector<std::string>& cols,
                                          const std::vector<Cell>& cells) {
  nlohmann::ordered_json j;
  j["type"] = type;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Cell& c = cells[k];
    switch (c.kind) {
      case Cell::Kind::Int: j[cols[k]] = std::stoll(c.text); break;
      case Cell::Kind::Str: j[cols[k]] = c.text; break;
      case Cell::Kind::Bool: j[cols[k]] = c.text == "true"; break;
      case Cell::Kind::Null: j[cols[k]] = nullptr; break;
    }
  }
  return j;
}

inline void write_jsonl(std::ostream& os, const Table& t) {
  for (const auto& r : t.rows) os << json_object(t.row_type, t.columns, r).dump() << '\n';
  os << json_object("summary", t.summary_columns, t.summary).dump() << '\n';
}

inline void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::Csv) write_csv(os, t);
  else write_jsonl(os, t);
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline Cell big(const BigInt& v) { return Cell::str(v.get_str()); }

/// lo and hi of an interval rounded outward to `digits` significant digits.
inline void push_interval(std::vector<Cell>& row, const std::optional<RatInterval>& x, unsigned digits) {
  if (!x) {
    row.push_back(Cell::null());
    row.push_back(Cell::null());
    return;
  }
  row.push_back(Cell::str(to_decimal(x->lo(), digits, Rounding::Down)));
  row.push_back(Cell::str(to_decimal(x->hi(), digits, Rounding::Up)));
}

inline void add_interval_columns(std::vector<std::string>& cols, const std::string& name) {
  cols.push_back(name + "_lo");
  cols.push_back(name + "_hi");
}

inline BigRat precision_of(const RunConfig& c) { return pow10_neg(c.precision_digits); }

inline Table run_construct(const RunConfig& c) {
  const Params p(c.a, c.b);
  const auto triples = triple_sequence(p, std::max(2u, c.i_max));
  Table t{"triple", {"i", "x0", "x1", "x2", "det", "x_digits"}, {}, {"command", "rows", "undecided"}, {}};
  for (unsigned i = 1; i <= c.i_max; ++i) {
    const auto& x = triples[i - 1];
    t.rows.push_back({Cell::integer(i), big(x.x0), big(x.x1), big(x.x2), big(x.det()),
                      Cell::integer(static_cast<long long>(decimal_digits(x.x0)))});
  }
  t.summary = {Cell::str("construct"), Cell::integer(c.i_max), Cell::integer(0)};
  return t;
}

inline Table run_verify(const RunConfig& c, int& undecided) {
  const Params p(c.a, c.b);
  const unsigned d = c.precision_digits;
  XiSource xi(p);
  const auto rows = theorem22_table(xi, triple_sequence(p, c.i_max), c.i_max, precision_of(c), c.threads);
  Table t;
  t.row_type = "verify";
  t.columns = {"i", "x_digits"};
  for (const char* n : {"error", "growth_ratio", "limit_val", "q_ratio"}) add_interval_columns(t.columns, n);
  t.columns.push_back("digits");
  t.columns.push_back("decided");
  undecided = 0;
  for (const auto& r : rows) {
    std::vector<Cell> row{Cell::integer(r.i), Cell::integer(static_cast<long long>(r.x_digits))};
    push_interval(row, r.error, d);
    push_interval(row, r.growth_ratio, d);
    push_interval(row, r.limit_val, d);
    push_interval(row, r.q_ratio, d);
    row.push_back(Cell::integer(d));
    row.push_back(Cell::boolean(r.decided));
    if (!r.decided) ++undecided;
    t.rows.push_back(std::move(row));
  }
  t.summary_columns = {"command", "rows", "undecided", "c1", "c2", "c3"};
  add_interval_columns(t.summary_columns, "limit_target");
  t.summary_columns.push_back("digits");
  t.summary = {Cell::str("verify"), Cell::integer(static_cast<long long>(rows.size())), Cell::integer(undecided)};
  if (c.i_max >= 10 && undecided == 0) {
    const auto k = fit_constants(rows);
    t.summary.push_back(Cell::str(to_decimal(k.c1, d, Rounding::Down)));
    t.summary.push_back(Cell::str(to_decimal(k.c2, d, Rounding::Up)));
    t.summary.push_back(Cell::str(to_decimal(k.c3, d, Rounding::Up)));
  } else {
    for (int k = 0; k < 3; ++k) t.summary.push_back(Cell::null());
  }
  const long bits = bits_for(precision_of(c)) + 16;
  push_interval(t.summary, round_outward_rel(limit_target(xi.dyadic(bits), p), bits), d);
  t.summary.push_back(Cell::integer(d));
  return t;
}

inline Table run_cube(const RunConfig& c, int& undecided) {
  const Params p(c.a, c.b);
  const unsigned d = c.precision_digits;
  const auto rows = cube_experiment(p, c.i_max, c.delta, precision_of(c), c.threads);
  Table t;
  t.row_type = "cube";
  t.columns = {"i", "x_digits"};
  add_interval_columns(t.columns, "cube_dist");
  add_interval_columns(t.columns, "threshold");
  t.columns.push_back("digits");
  t.columns.push_back("status");
  int pass = 0, fail = 0;
  undecided = 0;
  for (const auto& r : rows) {
    std::vector<Cell> row{Cell::integer(r.i), Cell::integer(static_cast<long long>(r.x_digits))};
    push_interval(row, r.cube_dist, d);
    push_interval(row, r.threshold, d);
    row.push_back(Cell::integer(d));
    row.push_back(Cell::str(to_string(r.status)));
    if (r.status == CubeStatus::Pass) ++pass;
    else if (r.status == CubeStatus::Fail) ++fail;
    else ++undecided;
    t.rows.push_back(std::move(row));
  }
  t.summary_columns = {"command", "rows", "undecided", "pass", "fail", "delta"};
  t.summary = {Cell::str("cube"),      Cell::integer(static_cast<long long>(rows.size())),
               Cell::integer(undecided), Cell::integer(pass),
               Cell::integer(fail),      Cell::str(c.delta.get_str())};
  return t;
}

inline Table run_simul(const RunConfig& c, int& undecided) {
  const Params p(c.a, c.b);
  const unsigned d = c.precision_digits;
  XiSource xi(p);
  Table t;
  t.row_type = "simul";
  t.columns = {"X", "x0", "x1", "x2"};
  add_interval_columns(t.columns, "delta");
  add_interval_columns(t.columns, "normalized");
  t.columns.push_back("digits");
  t.columns.push_back("tie");
  t.columns.push_back("tied_x0");
  undecided = 0;
  for (std::uint64_t X : c.X_list) {
    const auto r = best_simultaneous(xi, X, precision_of(c), c.threads);
    std::vector<Cell> row{big(r.X), big(r.x0), big(r.x1), big(r.x2)};
    push_interval(row, r.delta, d);
    push_interval(row, r.normalized, d);
    row.push_back(Cell::integer(d));
    row.push_back(Cell::boolean(r.tie));
    row.push_back(r.tied_x0 ? big(*r.tied_x0) : Cell::null());
    if (r.tie) ++undecided;
    t.rows.push_back(std::move(row));
  }
  t.summary_columns = {"command", "rows", "undecided"};
  t.summary = {Cell::str("simul"), Cell::integer(static_cast<long long>(t.rows.size())), Cell::integer(undecided)};
  return t;
}

inline Table run_algsearch(const RunConfig& c, int& undecided) {
  const Params p(c.a, c.b);
  const unsigned d = c.precision_digits;
  XiSource xi(p);
  Table t;
  t.row_type = "algebraic";
  t.columns = {"kind", "H", "c3", "c2", "c1", "c0", "height"};
  add_interval_columns(t.columns, "root_re");
  add_interval_columns(t.columns, "root_im");
  add_interval_columns(t.columns, "dist");
  add_interval_columns(t.columns, "exponent");
  t.columns.push_back("digits");
  t.columns.push_back("tie");
  undecided = 0;
  auto emit = [&](const char* kind, const AlgebraicCandidate& a) {
    std::vector<Cell> row{Cell::str(kind), Cell::integer(c.H)};
    for (int k = 3; k >= 0; --k) row.push_back(k <= a.poly.degree() ? big(a.poly.coeff(k)) : Cell::null());
    row.push_back(big(a.height));
    push_interval(row, a.root.re, d);
    push_interval(row, a.root.im, d);
    push_interval(row, a.dist, d);
    push_interval(row, a.exponent, d);
    row.push_back(Cell::integer(d));
    row.push_back(Cell::boolean(a.tie));
    if (a.tie) ++undecided;
    t.rows.push_back(std::move(row));
  };
  emit("rational", best_rational(xi, BigInt(c.H), precision_of(c)));
  emit("quadratic", best_algebraic(SearchKind::Quadratic, xi, c.H, precision_of(c), c.threads));
  emit("cubic_integer", best_algebraic(SearchKind::CubicInteger, xi, c.H, precision_of(c), c.threads));
  t.summary_columns = {"command", "rows", "undecided"};
  t.summary = {Cell::str("algsearch"), Cell::integer(static_cast<long long>(t.rows.size())), Cell::integer(undecided)};
  return t;
}

}  // namespace detail

inline void validate(const RunConfig& c) {
  if (c.a < 1 || c.b < 1 || c.a == c.b) throw UsageError("--a and --b must be distinct positive integers");
  if (c.threads < 1) throw UsageError("--threads must be >= 1");
  if (c.precision_digits < 1) throw UsageError("--precision-digits must be >= 1");
  if (c.command == "construct" && (c.i_max < 1 || c.i_max > kMaxTableIndex))
    throw UsageError("--i-max must lie in [1, 30]");
  if (c.command == "verify" && (c.i_max < 2 || c.i_max > kMaxTableIndex))
    throw UsageError("--i-max must lie in [2, 30]");
  if (c.command == "cube") {
    if (c.i_max < 2 || c.i_max > kMaxCubeIndex) throw UsageError("--i-max must lie in [2, 25]");
    if (c.delta <= 0 || c.delta >= 1) throw UsageError("--delta must lie in (0, 1)");
  }
  if (c.command == "simul") {
    if (c.X_list.empty()) throw UsageError("simul needs at least one --X");
    for (auto X : c.X_list)
      if (X < 1 || X > kMaxSimulBound) throw UsageError("--X must lie in [1, 10^12]");
  }
  if (c.command == "algsearch" && (c.H < 1 || c.H > kMaxSearchHeight))
    throw UsageError("--H must lie in [1, 2000]");
}

/// Runs one validated command, writing its table to `os`. Returns the exit code.
inline int run(const RunConfig& c, std::ostream& os) {
  validate(c);
  int undecided = 0;
  Table t;
  if (c.command == "construct") t = detail::run_construct(c);
  else if (c.command == "verify") t = detail::run_verify(c, undecided);
  else if (c.command == "cube") t = detail::run_cube(c, undecided);
  else if (c.command == "simul") t = detail::run_simul(c, undecided);
  else if (c.command == "algsearch") t = detail::run_algsearch(c, undecided);
  else throw UsageError("unknown command " + c.command);
  write_table(os, t, c.format);
  return undecided > 0 ? kExitUndecided : kExitOk;
}

namespace detail {

inline std::uint64_t parse_bound(const std::string& s) {
  const BigRat v = parse_rational(s);
  if (v.get_den() != 1 || v < 1) throw UsageError("--X must be a positive integer: " + s);
  if (v > BigRat(BigInt(std::to_string(kMaxSimulBound)))) throw UsageError("--X must lie in [1, 10^12]");
  return std::stoull(v.get_num().get_str());
}

}  // namespace detail

/// Parses argv into a RunConfig; throws UsageError on bad input and
/// CLI::Success for --help (after printing it to `help`).
inline RunConfig parse_args(int argc, const char* const* argv, std::ostream& help = std::cout) {
  RunConfig c;
  CLI::App app{"Fibonacci continued fractions: triples, verification tables and approximation searches"};
  app.require_subcommand(1);
  std::vector<std::string> X_text;
  std::string delta_text = "1/10", format_text = "csv";

  auto common = [&](CLI::App* s) {
    s->add_option("--a", c.a, "first partial quotient value");
    s->add_option("--b", c.b, "second partial quotient value");
    s->add_option("--precision-digits", c.precision_digits, "decimal digits of every enclosure (default 200)");
    s->add_option("--format", format_text, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    s->add_option("--threads", c.threads, "worker threads");
    s->add_option("--out", c.out, "output file (default standard output)");
  };
  auto* construct = app.add_subcommand("construct", "approximation triples x_i");
  auto* verify = app.add_subcommand("verify", "error, growth and limit table with fitted constants");
  auto* cube = app.add_subcommand("cube", "distance of X_i xi^3 to the nearest integer against X_i^-delta");
  auto* simul = app.add_subcommand("simul", "best simultaneous approximation with x0 <= X");
  auto* alg = app.add_subcommand("algsearch", "nearest rational, quadratic and cubic integer of height <= H");
  for (auto* s : {construct, verify, cube, simul, alg}) common(s);
  for (auto* s : {construct, verify, cube}) s->add_option("--i-max", c.i_max, "largest index")->required();
  cube->add_option("--delta", delta_text, "exponent in (0, 1), default 1/10");
  simul->add_option("--X", X_text, "bound on x0 (repeatable)")->required()->take_all();
  alg->add_option("--H", c.H, "height bound")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, help, help);
    throw;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    throw UsageError(msg.str());
  }
  c.command = app.get_subcommands().front()->get_name();
  c.format = format_text == "jsonl" ? Format::Jsonl : Format::Csv;
  try {
    c.delta = parse_rational(delta_text);
  } catch (const std::exception&) {
    throw UsageError("--delta must be a rational number: " + delta_text);
  }
  for (const auto& s : X_text) c.X_list.push_back(detail::parse_bound(s));
  validate(c);
  return c;
}

/// Whole program: parse, run, write to --out or `os`; usage problems go to `err`.
inline int main_entry(int argc, const char* const* argv, std::ostream& os = std::cout, std::ostream& err = std::cerr) {
  RunConfig c;
  try {
    c = parse_args(argc, argv, os);
  } catch (const CLI::Success&) {
    return kExitOk;
  } catch (const UsageError& e) {
    err << e.what();
    if (std::string(e.what()).back() != '\n') err << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  try {
    if (c.out.empty()) return run(c, os);
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "cannot open " << c.out << '\n';
      return kExitUsage;
    }
    return run(c, f);
  } catch (const ResourceError& e) {
    err << e.what() << '\n';
    return kExitUndecided;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fibcf::cli
