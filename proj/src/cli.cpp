/** @file cli.cpp
 *  @brief Command dispatch for the ope-forge tool. */
#include "opeforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "opeforge/errors.hpp"
#include "opeforge/ope.hpp"
#include "opeforge/reftable.hpp"
#include "opeforge/special.hpp"
#include "opeforge/verify.hpp"

namespace opeforge {

void RunConfig::validate() const {
  if (precision < 16) throw InputError("precision must be at least 16 digits");
  if (truncation < 1) throw InputError("truncation must be at least 1");
  if (!(mu > 0)) throw InputError("mu must be positive");
  if (output_format != "text" && output_format != "json" && output_format != "csv")
    throw InputError("format must be text, json or csv");
}

const std::string& csv_header() {
  static const std::string h = "n,k,a,c,term_scalar,d,p,J,M";
  return h;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

/// Left slot: φ^k (k ≥ 1), the vacuum, or a general label (order 0 only).
OpeCoefficient evaluate_query(int n, const std::string& left, const std::string& a_text,
                              const std::string& c_text) {
  MultiIndex b = MultiIndex::parse(left);
  MultiIndex a = MultiIndex::parse(a_text);
  MultiIndex c = MultiIndex::parse(c_text);
  bool pure_phi = !b.is_vacuum() && b.occupations().size() == 1 &&
                  b.occupations().begin()->first == AngularLabel{0, 0};
  if (pure_phi) return compute_coefficient(CoefficientQuery{n, b.total(), a, c});
  OpeCoefficient out;
  out.query = CoefficientQuery{n, b.total(), a, c};
  if (n != 0) {
    out.status = CoefficientStatus::Unsupported;
    out.missing_operator = "general left slot";
    out.method = "unsupported: only phi^k left slots are implemented beyond order 0";
    return out;
  }
  try {
    out.value = c0_general(a, b, c);
    out.method = b.is_vacuum() ? "vacuum" : "C0 general";
    out.status = out.value.is_zero() ? CoefficientStatus::Zero : CoefficientStatus::Exact;
  } catch (const UnsupportedError& e) {
    out.status = CoefficientStatus::Unsupported;
    out.missing_operator = e.missing_operator();
    out.method = e.what();
  }
  return out;
}

void print_coefficient_text(const OpeCoefficient& c, std::ostream& out) {
  if (c.status == CoefficientStatus::Unsupported) {
    out << "unsupported\n";
    out << "missing operator: " << c.missing_operator << "\n";
  } else {
    out << (c.value.is_zero() ? "0" : c.value.to_string()) << "\n";
  }
  out << "status: " << status_name(c.status) << "\n";
  if (!c.method.empty()) out << "method: " << c.method << "\n";
}

void write_csv_rows(const OpeCoefficient& c, std::ostream& out) {
  const auto& q = c.query;
  std::string prefix = std::to_string(q.n) + "," + std::to_string(q.k) + "," +
                       csv_field(q.a.pretty()) + "," + csv_field(q.c.pretty()) + ",";
  if (c.status == CoefficientStatus::Unsupported) return;
  if (c.value.is_zero()) {
    out << prefix << "0,,,,\n";
    return;
  }
  for (const auto& [k, s] : c.value.terms()) {
    if (k.ladder) throw InputError("CSV export cannot represent ladder words");
    out << prefix << csv_field(s.to_string()) << "," << k.d << "," << k.p << "," << k.J << ","
        << k.M << "\n";
  }
}

nlohmann::json export_document(const std::vector<OpeCoefficient>& cs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cs) arr.push_back(c.to_json());
  return {{"format", "opeforge-coefficients"},
          {"version", 1},
          {"engine_version", engine_version()},
          {"coefficients", arr}};
}

std::vector<OpeCoefficient> read_export(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IOError("cannot read " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IOError("malformed export file " + path + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "opeforge-coefficients")
    throw IOError(path + " is not an opeforge coefficient export");
  std::vector<OpeCoefficient> out;
  for (const auto& c : j.at("coefficients")) out.push_back(OpeCoefficient::from_json(c));
  return out;
}

/// Writes to the named file, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IOError("cannot write " + path);
  os << text;
  if (!os) throw IOError("write failed for " + path);
}

std::string vars_text(const Bindings& v) {
  std::string s;
  for (const auto& [k, x] : v) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(x);
  return s.empty() ? "-" : s;
}

struct TableArgs {
  bool check = false;
  bool apply_errata = false;
  std::string family;
  long p_max = 5;
  long l_max = 4;
  std::string reference;
};

int cmd_table(const TableArgs& t, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string path = t.reference.empty() ? default_reference_path() : t.reference;
  std::vector<TableRow> rows;
  try {
    rows = load_reference_table(path);
  } catch (const IOError& e) {
    err << "error: reference table: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!t.family.empty()) {
    std::vector<TableRow> keep;
    for (const auto& r : rows)
      if (r.family() == t.family) keep.push_back(r);
    if (keep.empty()) {
      err << "error: no table row has family '" << t.family << "'\n";
      return kExitUsage;
    }
    rows = keep;
  }
  TableRanges ranges;
  ranges.p_max = t.p_max;
  ranges.l_max = t.l_max;
  auto rep = check_table(rows, ranges);

  std::map<std::string, std::vector<const RowInstanceCheck*>> by_row;
  for (const auto& ic : rep.instances) by_row[ic.row_id].push_back(&ic);
  std::set<std::string> failing(rep.failing_rows.begin(), rep.failing_rows.end());
  std::set<std::string> errata(rep.errata_rows.begin(), rep.errata_rows.end());
  bool all_pass = t.apply_errata ? std::all_of(failing.begin(), failing.end(),
                                               [&](const std::string& id) { return errata.count(id) > 0; })
                                 : failing.empty();

  if (cfg.output_format == "json") {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json inst = nlohmann::json::array();
      for (const auto* ic : by_row[r.id]) {
        nlohmann::json e = {{"vars", ic->vars}, {"query", ic->query.to_json()},
                            {"computed", ic->computed.to_json()}};
        if (t.check) {
          e["matches_published"] = ic->matches_published;
          if (r.corrected) e["matches_corrected"] = ic->matches_corrected;
        }
        inst.push_back(e);
      }
      nlohmann::json jrow = {{"id", r.id}, {"family", r.family()}, {"published", r.value.coeff},
                             {"instances", inst}};
      if (t.check) {
        std::string st = !failing.count(r.id) ? "pass" : errata.count(r.id) ? "erratum" : "fail";
        jrow["result"] = st;
        if (r.corrected) jrow["corrected"] = r.corrected->coeff;
        if (!r.note.empty()) jrow["note"] = r.note;
      }
      jr.push_back(jrow);
    }
    nlohmann::json doc = {{"rows", jr}, {"instances", rep.instances.size()},
                          {"p_max", t.p_max}, {"l_max", t.l_max}};
    if (t.check)
      doc["summary"] = {{"rows", rep.rows}, {"rows_pass", rep.rows_pass},
                        {"failing_rows", rep.failing_rows}, {"errata_rows", rep.errata_rows},
                        {"apply_errata", t.apply_errata}, {"pass", all_pass}};
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : rows) {
      const auto& inst = by_row[r.id];
      if (t.check) {
        std::string st = !failing.count(r.id) ? "PASS" : errata.count(r.id) ? "ERRATUM" : "FAIL";
        int bad = 0;
        const RowInstanceCheck* first = nullptr;
        for (const auto* ic : inst)
          if (!ic->matches_published && !bad++) first = ic;
        out << st << "  " << r.id << "  [" << r.family() << "]  " << inst.size() << " instances";
        if (bad) out << ", " << bad << " mismatches";
        out << "\n";
        if (first) out << "      first mismatch at " << vars_text(first->vars) << ": " << first->detail << "\n";
        if (st == "ERRATUM")
          out << "      corrected value " << r.corrected->coeff << " matches every instance"
              << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
      } else {
        out << r.id << "  [" << r.family() << "]  published: " << r.value.coeff;
        if (r.value.rpow != "0") out << " * r^(" << r.value.rpow << ")";
        if (r.value.harmonic != "1") out << " * " << r.value.harmonic;
        out << "\n";
        for (const auto* ic : inst) {
          out << "    " << vars_text(ic->vars) << ": ";
          if (ic->computed.status == CoefficientStatus::Unsupported)
            out << "unsupported (" << ic->computed.missing_operator << ")";
          else
            out << (ic->computed.value.is_zero() ? "0" : ic->computed.value.to_string());
          out << "\n";
        }
      }
    }
    if (t.check) {
      out << "rows: " << rep.rows << ", pass: " << rep.rows_pass << ", fail: " << rep.failing_rows.size()
          << " (of which errata with matching corrected value: " << rep.errata_rows.size() << ")"
          << ", instances: " << rep.instances.size() << "\n";
      out << (all_pass ? "RESULT: PASS" : "RESULT: FAIL")
          << (t.apply_errata ? " (errata applied)" : " (published values)") << "\n";
    }
  }
  if (!t.check) return kExitPass;
  return all_pass ? kExitPass : kExitFail;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    err << "error: unknown suite '" << suite << "' (expected one of";
    for (const auto& n : names) err << " " << n;
    err << ")\n";
    return kExitUsage;
  }
  VerifyOptions opts;
  opts.crosscheck_N = cfg.truncation;
  auto results = run_suite(suite, opts);
  bool ok = true;
  for (const auto& s : results) ok = ok && s.passed();
  if (cfg.output_format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : results) arr.push_back(s.to_json());
    out << nlohmann::json{{"suites", arr}, {"passed", ok}}.dump(2) << "\n";
  } else {
    for (const auto& s : results) {
      out << "[" << s.suite << "]\n";
      for (const auto& c : s.checks)
        out << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    }
    out << (ok ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"ope-forge: OPE coefficients of the phi^6-type scalar theory in three dimensions"};
  app.fallthrough();  // global options may follow the subcommand
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<int> precision_flag;
  std::string cache;
  app.add_option("--precision", precision_flag, "working precision in decimal digits (>= 16)");
  app.add_option("--truncation", cfg.truncation, "series truncation order for the crosscheck");
  app.add_option("--mu", cfg.mu, "renormalization scale");
  app.add_option("--format", cfg.output_format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache", cache, "persistent coefficient cache file");

  // coeff
  auto* coeff = app.add_subcommand("coeff", "compute one OPE coefficient");
  int c_n = 0;
  std::string c_left = "phi", c_a, c_c;
  coeff->add_option("--n", c_n, "perturbation order")->required();
  coeff->add_option("--left", c_left, "left slot label (phi^k, 1, or a general label at order 0)");
  coeff->add_option("--a", c_a, "input label")->required();
  coeff->add_option("--c", c_c, "output label")->required();

  // table
  auto* table = app.add_subcommand("table", "instantiate and check the reference table");
  TableArgs targs;
  table->add_flag("--check", targs.check, "compare with the bundled reference values");
  table->add_flag("--apply-errata", targs.apply_errata, "accept flagged errata whose corrected value matches");
  table->add_option("--family", targs.family, "family filter \"n|phi^k|a|c\"");
  table->add_option("--p-max", targs.p_max, "largest p")->check(CLI::Range(0L, 50L));
  table->add_option("--l-max", targs.l_max, "largest l")->check(CLI::Range(0L, 50L));
  table->add_option("--reference", targs.reference, "reference table file");

  // verify
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  std::string suite;
  verify->add_option("suite", suite, "angular|ring|sums|remainders|crosscheck|all")->required();

  // sum
  auto* sum = app.add_subcommand("sum", "characteristic sum S(l1,l2;a)");
  int s_l1 = 0, s_l2 = 0, s_a = 0;
  sum->add_option("--l1", s_l1)->required()->check(CLI::NonNegativeNumber);
  sum->add_option("--l2", s_l2)->required()->check(CLI::NonNegativeNumber);
  sum->add_option("--a", s_a)->required()->check(CLI::NonNegativeNumber);

  // export
  auto* exp = app.add_subcommand("export", "write coefficients as JSON or CSV");
  int e_n = 0;
  std::string e_left = "phi", e_a, e_c, e_out;
  bool e_table = false;
  long e_pmax = 5, e_lmax = 4;
  exp->add_option("--n", e_n);
  exp->add_option("--left", e_left);
  exp->add_option("--a", e_a);
  exp->add_option("--c", e_c);
  exp->add_flag("--table", e_table, "export every reference-table instance");
  exp->add_option("--p-max", e_pmax)->check(CLI::Range(0L, 50L));
  exp->add_option("--l-max", e_lmax)->check(CLI::Range(0L, 50L));
  exp->add_option("--out", e_out, "output file (stdout if absent)");

  // import
  auto* imp = app.add_subcommand("import", "read a JSON export and write it back canonically");
  std::string i_in, i_out;
  imp->add_option("--in", i_in)->required();
  imp->add_option("--out", i_out);

  // cache
  auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the persistent cache");
  std::string cache_action;
  cache_cmd->add_option("action", cache_action, "info|clear")->required()->check(CLI::IsMember({"info", "clear"}));

  std::vector<std::string> args(args_in.rbegin(), args_in.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (precision_flag) cfg.precision = *precision_flag;
    if (const char* env = std::getenv("OPE_FORGE_PRECISION")) {
      try {
        cfg.precision = std::stoi(env);
      } catch (const std::exception&) {
        throw InputError("OPE_FORGE_PRECISION must be an integer");
      }
    }
    if (!cache.empty()) cfg.cache_path = cache;
    cfg.validate();
    set_working_digits(cfg.precision);

    if (cfg.cache_path && *cache_cmd) {
      if (cache_action == "clear") {
        std::error_code ec;
        std::filesystem::remove(*cfg.cache_path, ec);
        if (ec) throw IOError("cannot remove " + *cfg.cache_path);
        out << "cleared " << *cfg.cache_path << "\n";
        return kExitPass;
      }
    } else if (*cache_cmd) {
      err << "error: cache needs --cache <path>\n";
      return kExitUsage;
    }
    size_t loaded = 0;
    if (cfg.cache_path && std::filesystem::exists(*cfg.cache_path))
      loaded = load_coefficient_cache(*cfg.cache_path);

    int code = kExitPass;
    if (*cache_cmd) {
      out << "cache: " << *cfg.cache_path << "\n"
          << "engine version: " << engine_version() << "\n"
          << "valid entries: " << loaded << "\n";
      return kExitPass;
    } else if (*coeff) {
      auto c = evaluate_query(c_n, c_left, c_a, c_c);
      if (cfg.output_format == "json")
        out << c.to_json().dump(2) << "\n";
      else if (cfg.output_format == "csv") {
        out << csv_header() << "\n";
        write_csv_rows(c, out);
      } else
        print_coefficient_text(c, out);
      code = c.status == CoefficientStatus::Unsupported ? kExitUnsupported : kExitPass;
    } else if (*table) {
      code = cmd_table(targs, cfg, out, err);
    } else if (*verify) {
      code = cmd_verify(suite, cfg, out, err);
    } else if (*sum) {
      auto cs = char_sum(s_l1, s_l2, s_a);
      if (cfg.output_format == "json")
        out << nlohmann::json{{"l1", s_l1}, {"l2", s_l2}, {"a", s_a}, {"value", cs.value.to_string()},
                              {"method", cs.tag()}}.dump()
            << "\n";
      else
        out << cs.value.to_string() << "  [case " << cs.tag() << "]\n";
    } else if (*exp) {
      std::vector<OpeCoefficient> cs;
      if (e_table) {
        TableRanges r;
        r.p_max = e_pmax;
        r.l_max = e_lmax;
        auto rep = check_table(load_reference_table(default_reference_path()), r);
        std::set<std::string> seen;
        for (const auto& ic : rep.instances)
          if (seen.insert(ic.query.to_string()).second) cs.push_back(ic.computed);
      } else {
        if (e_a.empty() || e_c.empty()) throw InputError("export needs --a and --c, or --table");
        cs.push_back(evaluate_query(e_n, e_left, e_a, e_c));
      }
      std::ostringstream os;
      if (cfg.output_format == "csv") {
        os << csv_header() << "\n";
        for (const auto& c : cs) write_csv_rows(c, os);
      } else {
        os << export_document(cs).dump(2) << "\n";
      }
      emit(e_out, os.str(), out);
    } else if (*imp) {
      auto cs = read_export(i_in);
      emit(i_out, export_document(cs).dump(2) + "\n", out);
    }
    if (cfg.cache_path) save_coefficient_cache(*cfg.cache_path);
    return code;
  } catch (const IOError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIO;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const OpeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace opeforge
