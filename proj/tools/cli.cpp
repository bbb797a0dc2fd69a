#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "kloost/errors.hpp"
#include "kloost/goethals.hpp"
#include "kloost/identities.hpp"
#include "kloost/ksum.hpp"
#include "kloost/parallel.hpp"

namespace kloost::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  int m = 0;
  std::string m_range;
  std::string poly;
  std::string format = "json";
  std::size_t cap = 16;
  bool force = false;
  int workers = 0;
  std::uint64_t seed = 1;

  std::vector<int> degrees() const {
    if (m != 0 && !m_range.empty()) throw InvalidArgument("use either --m or --m-range, not both");
    if (!m_range.empty()) {
      const auto dots = m_range.find("..");
      if (dots == std::string::npos) throw InvalidArgument("--m-range must look like A..B");
      const int lo = parse_int(m_range.substr(0, dots)), hi = parse_int(m_range.substr(dots + 2));
      if (lo > hi || lo < kMinDegree || hi > kMaxDegree) throw InvalidArgument("--m-range must lie within 1..24");
      if (!poly.empty() && lo != hi) throw InvalidArgument("--poly needs a single degree");
      std::vector<int> out;
      for (int i = lo; i <= hi; ++i) out.push_back(i);
      return out;
    }
    if (m == 0) throw InvalidArgument("--m or --m-range is required");
    return {m};
  }

  Field field(int degree) const {
    if (poly.empty()) return Field(degree);
    return Field(degree, parse_hex(poly));
  }

  static int parse_int(const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw InvalidArgument("bad integer '" + s + "'");
    return v;
  }

  static std::uint32_t parse_hex(std::string s) {
    if (s.starts_with("0x") || s.starts_with("0X")) s = s.substr(2);
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) throw InvalidArgument("bad hex literal '" + s + "'");
    return v;
  }
};

Elem parse_elem(const Field& f, const std::string& text) {
  const Elem e = RunConfig::parse_hex(text);
  if (e >= f.order()) throw InvalidArgument("element " + text + " is outside GF(2^" + std::to_string(f.m()) + ")");
  return e;
}

void add_degree(CLI::App* sub, RunConfig& cfg, bool range) {
  sub->add_option("--m", cfg.m, "Extension degree (1..24)");
  if (range) sub->add_option("--m-range", cfg.m_range, "Degree range A..B");
  sub->add_option("--poly", cfg.poly, "Reduction polynomial in hex (bit i = x^i)");
}

void add_run_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--cap", cfg.cap, "Maximum counterexamples per report");
  sub->add_flag("--force", cfg.force, "Override cost guards");
  sub->add_option("--workers", cfg.workers, "OpenMP worker count");
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// One report prints as an object, several as an array.
void emit_reports(std::ostream& out, const std::vector<json>& reports) {
  if (reports.size() == 1)
    emit(out, reports[0]);
  else
    emit(out, json(reports));
}

json field_info(const Field& f) {
  json rows = json::array();
  for (Elem r : f.dual_rows()) rows.push_back(elem_hex(r));
  return {{"m", f.m()},
          {"q", f.order()},
          {"poly_hex", poly_hex(f.poly())},
          {"irreducible", is_irreducible(f.poly())},
          {"trace_mask_hex", elem_hex(f.trace_mask())},
          {"trace_one", f.trace(1)},
          {"dual_rows_hex", rows}};
}

std::vector<Identity> load_identity_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::vector<Identity> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_identity(line));
  }
  return out;
}

int run_identities(const RunConfig& cfg, const std::vector<Identity>& ids, std::ostream& out) {
  std::vector<json> reports;
  bool ok = true;
  for (int m : cfg.degrees()) {
    const Field f = cfg.field(m);
    const Spectrum s = spectrum(f);
    for (const auto& id : ids) {
      const auto r = verify(f, s, id, cfg.cap);
      ok = ok && r.passed();
      json j = to_json(r);
      j["identity"] = format_identity(id);
      reports.push_back(std::move(j));
    }
  }
  emit_reports(out, reports);
  return ok ? kExitOk : kExitFinding;
}

json witness_json(const Field& f, const Spectrum& s, const Mu2Table& table, Elem b, Elem c) {
  const KPair k = k_pair(f, b, c);
  const ClosedForm orig = mu2_closed_original(f, s, b, c);
  const ClosedForm corr = mu2_closed_corrected(f, s, b, c);
  const auto value = [](const ClosedForm& cf) { return cf.value() ? json(*cf.value()) : json(nullptr); };
  return {{"b_hex", elem_hex(b)},
          {"c_hex", elem_hex(c)},
          {"k1_hex", elem_hex(k.k1)},
          {"k2_hex", elem_hex(k.k2)},
          {"K", s[f.mul(k.k1, k.k2)]},
          {"brute", table.at(b, c)},
          {"mu2", table.at(b, c) / kOrderedPerSolution},
          {"original", value(orig)},
          {"original_status", to_string(orig.status)},
          {"original_numerator", orig.numerator},
          {"corrected", value(corr)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary Kloosterman sums, identity verification and Goethals solution counts", "kloost"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<int()> action;

  // field info
  auto* field_cmd = app.add_subcommand("field", "Finite field data")->require_subcommand(1);
  auto* field_info_cmd = field_cmd->add_subcommand("info", "Polynomial, trace mask and dual matrix");
  add_degree(field_info_cmd, cfg, false);
  field_info_cmd->callback([&] {
    action = [&] {
      emit(out, field_info(cfg.field(cfg.degrees().at(0))));
      return kExitOk;
    };
  });

  // ksum
  auto* ksum_cmd = app.add_subcommand("ksum", "Kloosterman sums")->require_subcommand(1);
  std::string a_hex;
  auto* ksum_eval = ksum_cmd->add_subcommand("eval", "K(a) by direct summation");
  add_degree(ksum_eval, cfg, false);
  ksum_eval->add_option("--a", a_hex, "Element (hex)")->required();
  std::string eval_format = "text";
  ksum_eval->add_option("--format", eval_format, "text|json")->check(CLI::IsMember({"text", "json"}));
  ksum_eval->callback([&] {
    action = [&] {
      const Field f = cfg.field(cfg.degrees().at(0));
      const Elem a = parse_elem(f, a_hex);
      const std::int64_t k = kloosterman(f, a);
      if (eval_format == "json")
        emit(out, {{"m", f.m()}, {"poly_hex", poly_hex(f.poly())}, {"a_hex", elem_hex(a)}, {"K", k}});
      else
        out << k << "\n";
      return kExitOk;
    };
  });

  auto* ksum_spec = ksum_cmd->add_subcommand("spectrum", "K(a) for every a != 0");
  add_degree(ksum_spec, cfg, false);
  ksum_spec->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  ksum_spec->add_option("--workers", cfg.workers, "OpenMP worker count");
  ksum_spec->callback([&] {
    action = [&] {
      const Field f = cfg.field(cfg.degrees().at(0));
      const Spectrum s = spectrum(f);
      if (cfg.format == "csv") {
        out << "a_hex,K\n";
        for (Elem a = 1; a < f.order(); ++a) out << elem_hex(a) << ',' << s[a] << '\n';
      } else {
        json arr = json::array();
        for (Elem a = 1; a < f.order(); ++a) arr.push_back({{"a_hex", elem_hex(a)}, {"K", s[a]}});
        emit(out, arr);
      }
      return kExitOk;
    };
  });

  // mu2
  auto* mu2_cmd = app.add_subcommand("mu2", "Goethals system solution counts")->require_subcommand(1);
  std::string b_hex, c_hex;
  auto* mu2_count = mu2_cmd->add_subcommand("count", "Brute force, fast count and both closed forms at (b, c)");
  add_degree(mu2_count, cfg, false);
  add_run_flags(mu2_count, cfg);
  mu2_count->add_option("--b", b_hex, "b (hex)")->required();
  mu2_count->add_option("--c", c_hex, "c (hex)")->required();
  mu2_count->callback([&] {
    action = [&] {
      const Field f = cfg.field(cfg.degrees().at(0));
      const auto r = mu2_report(f, spectrum(f), parse_elem(f, b_hex), parse_elem(f, c_hex), cfg.force);
      emit(out, to_json(f, r));
      return r.agree() ? kExitOk : kExitFinding;
    };
  });

  std::size_t samples = 100;
  auto* mu2_verify = mu2_cmd->add_subcommand("verify", "Oracle chain, corrected closed form and symmetry per degree");
  add_degree(mu2_verify, cfg, true);
  add_run_flags(mu2_verify, cfg);
  mu2_verify->add_option("--samples", samples, "Random (b, c) pairs for the per-pair brute-force check");
  mu2_verify->add_option("--seed", cfg.seed, "Sampling seed");
  mu2_verify->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  mu2_verify->callback([&] {
    action = [&] {
      bool ok = true;
      json rows = json::array();
      for (int m : cfg.degrees()) {
        const Field f = cfg.field(m);
        const Spectrum s = spectrum(f);
        const Mu2Table fast = mu2_fast_table(f, cfg.force);
        const Mu2Table brute = mu2_bruteforce_table(f, cfg.force);
        const auto corrected = closed_form_check(f, s, fast, false, cfg.cap);
        const auto original = closed_form_check(f, s, brute, true, cfg.cap);
        const auto symmetry = symmetry_check(f, fast, SymmetryForm::Restricted, cfg.cap);
        const auto printed = symmetry_check(f, fast, SymmetryForm::AsPrinted, 0);

        std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(m));
        std::uint64_t sampled_agree = 0;
        for (std::size_t i = 0; i < samples; ++i) {
          const Elem b = static_cast<Elem>(rng()) & f.mask(), c = static_cast<Elem>(rng()) & f.mask();
          sampled_agree += mu2_bruteforce(f, b, c, cfg.force) == mu2_fast(f, b, c);
        }
        const bool tables_agree = brute == fast;
        ok = ok && tables_agree && corrected.passed() && symmetry.passed() && sampled_agree == samples;
        rows.push_back({{"m", m},
                        {"poly_hex", poly_hex(f.poly())},
                        {"pairs", std::uint64_t{f.order()} * f.order()},
                        {"brute_fast_agree", tables_agree},
                        {"corrected", to_json(corrected)},
                        {"original_mismatches", original.counterexample_count},
                        {"symmetry", to_json(symmetry)},
                        {"symmetry_as_printed_violations", printed.counterexample_count},
                        {"sampled", {{"seed", cfg.seed}, {"count", samples}, {"agree", sampled_agree}}}});
      }
      if (cfg.format == "csv") {
        out << "m,poly_hex,pairs,brute_fast_agree,corrected_checked,corrected_mismatches,original_mismatches,"
               "symmetry_checked,symmetry_violations,symmetry_as_printed_violations,sampled,sampled_agree\n";
        for (const auto& r : rows)
          out << r["m"] << ',' << r["poly_hex"].get<std::string>() << ',' << r["pairs"] << ','
              << r["brute_fast_agree"] << ',' << r["corrected"]["checked"] << ','
              << r["corrected"]["counterexample_count"] << ',' << r["original_mismatches"] << ','
              << r["symmetry"]["checked"] << ',' << r["symmetry"]["counterexample_count"] << ','
              << r["symmetry_as_printed_violations"] << ','
              << r["sampled"]["count"] << ',' << r["sampled"]["agree"] << '\n';
      } else {
        emit(out, rows);
      }
      return ok ? kExitOk : kExitFinding;
    };
  });

  auto* mu2_bug = mu2_cmd->add_subcommand(
      "bug-exhibit", "Pairs where the reconstructed original closed form disagrees with brute force");
  add_degree(mu2_bug, cfg, true);
  add_run_flags(mu2_bug, cfg);
  mu2_bug->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  mu2_bug->callback([&] {
    action = [&] {
      bool found = false;
      json rows = json::array();
      if (cfg.format == "csv")
        out << "m,b_hex,c_hex,k1_hex,k2_hex,K,brute,original_numerator,original_status\n";
      for (int m : cfg.degrees()) {
        const Field f = cfg.field(m);
        const Spectrum s = spectrum(f);
        const Mu2Table brute = mu2_bruteforce_table(f, cfg.force);
        const auto r = closed_form_check(f, s, brute, true, cfg.cap);
        found = found || !r.passed();
        json witnesses = json::array();
        for (const auto& cex : r.counterexamples) {
          json w = witness_json(f, s, brute, cex.point[0], cex.point[1]);
          if (cfg.format == "csv")
            out << m << ',' << w["b_hex"].get<std::string>() << ',' << w["c_hex"].get<std::string>() << ','
                << w["k1_hex"].get<std::string>() << ',' << w["k2_hex"].get<std::string>() << ',' << w["K"] << ','
                << w["brute"] << ',' << w["original_numerator"] << ','
                << w["original_status"].get<std::string>() << '\n';
          witnesses.push_back(std::move(w));
        }
        rows.push_back({{"m", m},
                        {"poly_hex", poly_hex(f.poly())},
                        {"parity", m % 2 ? "odd" : "even"},
                        {"variant", "reconstructed-original"},
                        {"applicable", r.checked},
                        {"mismatches", r.counterexample_count},
                        {"witnesses", witnesses}});
      }
      if (cfg.format == "json") emit(out, rows);
      return found ? kExitFinding : kExitOk;
    };
  });

  std::string form = "both";
  auto* mu2_sym = mu2_cmd->add_subcommand("symmetry", "Check the b+1 / c+1 symmetry relations exhaustively");
  add_degree(mu2_sym, cfg, true);
  add_run_flags(mu2_sym, cfg);
  mu2_sym->add_option("--form", form, "as-printed | restricted | both")
      ->check(CLI::IsMember({"as-printed", "restricted", "both"}));
  mu2_sym->callback([&] {
    action = [&] {
      std::vector<json> reports;
      bool ok = true;
      for (int m : cfg.degrees()) {
        const Field f = cfg.field(m);
        const Mu2Table fast = mu2_fast_table(f, cfg.force);
        for (SymmetryForm sf : {SymmetryForm::AsPrinted, SymmetryForm::Restricted}) {
          if (form != "both" && form != to_string(sf)) continue;
          const auto r = symmetry_check(f, fast, sf, cfg.cap);
          ok = ok && r.passed();
          reports.push_back(to_json(r));
        }
      }
      emit_reports(out, reports);
      return ok ? kExitOk : kExitFinding;
    };
  });

  // identity
  auto* id_cmd = app.add_subcommand("identity", "Kloosterman sum identities")->require_subcommand(1);
  auto* id_list = id_cmd->add_subcommand("list", "Print the builtin catalog");
  id_list->callback([&] {
    action = [&] {
      json arr = json::array();
      for (const auto& id : builtin_catalog())
        arr.push_back({{"name", id.name}, {"var", std::string(1, id.var)}, {"text", format_identity(id)}});
      emit(out, arr);
      return kExitOk;
    };
  });

  std::string target, file;
  auto* id_verify = id_cmd->add_subcommand("verify", "Verify a catalog entry, 'all', or an inline identity");
  id_verify->add_option("target", target, "Catalog name, 'all', or 'NAME : VAR : LHS == RHS [; ...]'");
  id_verify->add_option("--file", file, "File with one identity per line");
  add_degree(id_verify, cfg, true);
  add_run_flags(id_verify, cfg);
  id_verify->callback([&] {
    action = [&] {
      std::vector<Identity> ids;
      if (!file.empty()) ids = load_identity_file(file);
      if (target == "all") {
        auto all = builtin_catalog();
        ids.insert(ids.end(), all.begin(), all.end());
      } else if (target.find(':') != std::string::npos) {
        ids.push_back(parse_identity(target));
      } else if (!target.empty()) {
        auto id = find_builtin(target);
        if (!id) throw InvalidArgument("no catalog identity named '" + target + "' (see 'identity list')");
        ids.push_back(*id);
      }
      if (ids.empty()) throw InvalidArgument("nothing to verify: give a target or --file");
      return run_identities(cfg, ids, out);
    };
  });

  std::string family, n_text, k_text;
  auto* id_family = id_cmd->add_subcommand("family", "Instantiate and verify a parameterized family");
  id_family->add_option("family", family, "thm4 | thm5 | thm6")
      ->required()
      ->check(CLI::IsMember({"thm4", "thm5", "thm6"}));
  id_family->add_option("--n", n_text, "Dyadic exponent, e.g. 3 or -1/8")->required();
  id_family->add_option("--k", k_text, "Second exponent (thm5 only)");
  add_degree(id_family, cfg, true);
  add_run_flags(id_family, cfg);
  id_family->callback([&] {
    action = [&] {
      const DyadicRational n = DyadicRational::parse(n_text);
      Identity id;
      if (family == "thm5") {
        if (k_text.empty()) throw InvalidArgument("thm5 needs --k");
        id = family_thm5(n, DyadicRational::parse(k_text));
      } else {
        if (!k_text.empty()) throw InvalidArgument("--k only applies to thm5");
        id = family == "thm4" ? family_note_thm4(n) : family_thm6(n);
      }
      return run_identities(cfg, {id}, out);
    };
  });

  // theorem2
  auto* t2_cmd = app.add_subcommand("theorem2", "K(k1 k2) = K(k1 k2 + k2) over all (b, c)")->require_subcommand(1);
  auto* t2_verify = t2_cmd->add_subcommand("verify", "Exhaustive check");
  add_degree(t2_verify, cfg, true);
  add_run_flags(t2_verify, cfg);
  t2_verify->callback([&] {
    action = [&] {
      std::vector<json> reports;
      bool ok = true;
      for (int m : cfg.degrees()) {
        const Field f = cfg.field(m);
        const auto r = verify_theorem2(f, spectrum(f), cfg.cap);
        ok = ok && r.passed();
        reports.push_back(to_json(r));
      }
      emit_reports(out, reports);
      return ok ? kExitOk : kExitFinding;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cfg.workers > 0) set_workers(cfg.workers);
    if (!action) throw InvalidArgument("no command given");
    return action();
  } catch (const ParseError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
  } catch (const CostGuardError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace kloost::cli
