#include "kloost/identities.hpp"

#include <cctype>

#include "kloost/goethals.hpp"
#include "kloost/parallel.hpp"

namespace kloost {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto at = s.find(sep);
    out.push_back(trim(s.substr(0, at)));
    if (at == std::string_view::npos) return out;
    s.remove_prefix(at + 1);
  }
}

void check_variable(const Expr& e, char var, std::string_view what) {
  const auto v = e.variable();
  if (v && *v != var)
    throw InvalidArgument(std::string(what) + " uses variable '" + *v + "' but the identity is in '" + var + "'");
}

// Exponent as it appears after '^'.
std::string exp_text(const DyadicRational& r) {
  if (r.is_integer() && r.sign() >= 0) return r.to_string();
  return "(" + r.to_string() + ")";
}

Identity from_text(const std::string& text) { return parse_identity(text); }

}  // namespace

Identity make_identity(std::string name, char var, Expr lhs, Expr rhs, std::vector<Expr> exclusions,
                       bool exclude_zero, bool exclude_one) {
  if (!std::isalpha(static_cast<unsigned char>(var))) throw InvalidArgument("identity variable must be a letter");
  check_variable(lhs, var, "left side");
  check_variable(rhs, var, "right side");
  for (const auto& e : exclusions) check_variable(e, var, "exclusion");
  return Identity{std::move(name), var, std::move(lhs), std::move(rhs), std::move(exclusions), exclude_zero,
                  exclude_one};
}

Identity parse_identity(std::string_view line) {
  const auto first = line.find(':');
  const auto second = first == std::string_view::npos ? first : line.find(':', first + 1);
  if (second == std::string_view::npos)
    throw ParseError(ParseErrorKind::Syntax, 0, "identity must look like 'NAME : VAR : LHS == RHS'");
  const std::string_view name = trim(line.substr(0, first));
  const std::string_view var = trim(line.substr(first + 1, second - first - 1));
  if (name.empty()) throw ParseError(ParseErrorKind::Syntax, 0, "identity name is empty");
  if (var.size() != 1 || !std::isalpha(static_cast<unsigned char>(var[0])))
    throw ParseError(ParseErrorKind::Syntax, first + 1, "identity variable must be a single letter");

  const auto sections = split(line.substr(second + 1), ';');
  const std::string_view body = sections[0];
  const auto eq = body.find("==");
  if (eq == std::string_view::npos || body.find("==", eq + 2) != std::string_view::npos)
    throw ParseError(ParseErrorKind::Syntax, second + 1, "identity body needs exactly one '=='");

  std::vector<Expr> exclusions;
  bool zero = false, one = false;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    std::string_view sec = sections[i];
    if (sec.starts_with("EXCLUDE")) {
      for (auto item : split(sec.substr(7), ',')) {
        if (item.empty()) throw ParseError(ParseErrorKind::Syntax, 0, "empty EXCLUDE entry");
        exclusions.push_back(parse(item));
      }
    } else if (sec.starts_with("NOTVALUES")) {
      for (auto item : split(sec.substr(9), ',')) {
        if (item == "0" || item == "0x0")
          zero = true;
        else if (item == "1" || item == "0x1")
          one = true;
        else
          throw ParseError(ParseErrorKind::Syntax, 0, "NOTVALUES accepts only 0 and 1, got '" + std::string(item) + "'");
      }
    } else {
      throw ParseError(ParseErrorKind::Syntax, 0, "unknown section '" + std::string(sec) + "'");
    }
  }
  return make_identity(std::string(name), var[0], parse(body.substr(0, eq)), parse(body.substr(eq + 2)),
                       std::move(exclusions), zero, one);
}

std::string format_identity(const Identity& id) {
  std::string out = id.name + " : " + id.var + " : " + format(id.lhs) + " == " + format(id.rhs);
  if (!id.exclusions.empty()) {
    out += " ; EXCLUDE ";
    for (std::size_t i = 0; i < id.exclusions.size(); ++i) {
      if (i) out += ", ";
      out += format(id.exclusions[i]);
    }
  }
  if (id.exclude_zero || id.exclude_one) {
    out += " ; NOTVALUES ";
    if (id.exclude_zero) out += id.exclude_one ? "0,1" : "0";
    else out += "1";
  }
  return out;
}

std::vector<Identity> builtin_catalog() {
  static const char* const kCatalog[] = {
      "HZ-I : a : a^3*(a+1) == a*(a+1)^3 ; NOTVALUES 0,1",
      "HZ-II : a : a^5*(a+1) == a*(a+1)^5 ; NOTVALUES 0,1",
      "Hollmann-Xiang : a : a^8*(a^4+a) == (a+1)^8*(a^4+a) ; NOTVALUES 0,1",
      "Shin-Kumar-Helleseth : a : a/(a+1)^4 == a^3/(a+1)^4 ; NOTVALUES 0,1",
      "Cor1-1 : c : c^6*(c^2+c+1)/(c+1)^4 == c^2*(c^2+c+1)^3/(c+1)^4 ; EXCLUDE (c+1)^4",
      "Cor1-2 : c : c^9*(c+1)^3/(c^8+c^4+1) == c^3*(c+1)^9/(c^8+c^4+1) ; EXCLUDE c^8+c^4+1",
      "Cor1-3 : c : (c+1)^8*(c^4+c) == c^3*(c^3+1)^3",
      "Cor1-4 : c : (c^11+c^3)*(c^5+1) == c*(c^5+1)^3",
      "Cor1-5 : c : (c+1)^20*(c^8+c) == (c+1)^4*(c^8+c)^3",
      "Cor2 : b : b^3*(b^3+b+1)^3/(1+b)^4 == b^9*(b^3+b+1)/(1+b)^4 ; EXCLUDE (1+b)^4",
      "Cor3 : b : (b^3+b^2+1)*(b^3+b^2+b)^3/(1+b)^4 == (b^3+b^2+1)^3*(b^3+b^2+b)/(1+b)^4 ; EXCLUDE (1+b)^4",
      "Cor5 : b : (b^3+b^2)*(b^3+b+1)^3/(b^8+b^4+1) == (b^3+b^2)^3*(b^3+b+1)/(b^8+b^4+1) ; EXCLUDE b^8+b^4+1",
  };
  std::vector<Identity> out;
  for (const char* line : kCatalog) out.push_back(parse_identity(line));
  return out;
}

std::optional<Identity> find_builtin(std::string_view name) {
  for (auto& id : builtin_catalog())
    if (id.name == name) return id;
  return std::nullopt;
}

Identity family_note_thm4(const DyadicRational& n) {
  const std::string a = "(c^" + exp_text(n + 1) + "+c^" + exp_text(n) + ")";
  const std::string b = "(c^" + exp_text(n + 1) + "+1)";
  const std::string d = "c^" + exp_text(n * 4) + "+1";
  return from_text("thm4(n=" + n.to_string() + ") : c : " + a + "^3*" + b + "/(" + d + ") == " + a + "*" + b +
                   "^3/(" + d + ") ; EXCLUDE " + d);
}

Identity family_thm5(const DyadicRational& n, const DyadicRational& k) {
  const std::string a = "(b^" + exp_text(n + 2) + "+b^" + exp_text(k) + "+1)";
  const std::string b = "(b^" + exp_text(n + 2) + "+b^" + exp_text(n) + "+b^" + exp_text(k) + ")";
  const std::string d = "b^" + exp_text(n * 4) + "+1";
  return from_text("thm5(n=" + n.to_string() + ",k=" + k.to_string() + ") : b : " + a + "*" + b + "^3/(" + d +
                   ") == " + a + "^3*" + b + "/(" + d + ") ; EXCLUDE " + d);
}

Identity family_thm6(const DyadicRational& n) {
  const std::string a = "(b^" + exp_text(n + 1) + "+b^2)";
  const std::string b = "(b^" + exp_text(n + 1) + "+b^" + exp_text(n) + "+b^2+1)";
  const std::string d = "b^" + exp_text(n * 4) + "+1";
  return from_text("thm6(n=" + n.to_string() + ") : b : " + a + "*" + b + "^3/(" + d + ") == " + a + "^3*" + b +
                   "/(" + d + ") ; EXCLUDE " + d);
}

VerificationReport verify(const Field& field, const Spectrum& spec, const Identity& id,
                          std::size_t counterexample_cap) {
  if (spec.m() != field.m()) throw InvalidArgument("spectrum belongs to a different field");
  const std::int64_t q = field.order();
  VerificationReport total;
  total.name = id.name;
  total.m = field.m();
  total.poly = field.poly();
  total.domain_size = static_cast<std::uint64_t>(q);

  const int threads = workers_for(static_cast<std::uint64_t>(q) * 64);
  std::vector<VerificationReport> parts(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    VerificationReport& part = parts[static_cast<std::size_t>(
#ifdef _OPENMP
        omp_get_thread_num()
#else
        0
#endif
    )];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < q; ++i) {
      const Elem v = static_cast<Elem>(i);
      if ((v == 0 && id.exclude_zero) || (v == 1 && id.exclude_one)) {
        ++part.excluded;
        continue;
      }
      const char* skip = nullptr;
      for (const auto& ex : id.exclusions) {
        const Evaluated g = try_eval(field, ex, v);
        if (!g.ok()) {
          skip = skip_reason::kDomainError;
          break;
        }
        if (g.value == 0) {
          skip = skip_reason::kExclusionZero;
          break;
        }
      }
      Evaluated l, r;
      if (!skip) {
        l = try_eval(field, id.lhs, v);
        r = try_eval(field, id.rhs, v);
        if (!l.ok() || !r.ok())
          skip = skip_reason::kDomainError;
        else if (l.value == 0 || r.value == 0)
          skip = skip_reason::kKArgZero;
      }
      if (skip) {
        ++part.skipped[skip];
        continue;
      }
      ++part.checked;
      const std::int64_t kl = spec[l.value], kr = spec[r.value];
      if (kl != kr) {
        ++part.counterexample_count;
        if (part.counterexamples.size() < counterexample_cap)
          part.counterexamples.push_back(Counterexample{{v}, {}, l.value, r.value, kl, kr});
      }
    }
  }
  for (const auto& part : parts) total.merge(part);
  total.finalize(counterexample_cap);
  return total;
}

VerificationReport verify(const Field& field, const Identity& id, std::size_t counterexample_cap) {
  return verify(field, spectrum(field), id, counterexample_cap);
}

VerificationReport verify_theorem2(const Field& field, const Spectrum& spec, std::size_t counterexample_cap) {
  if (spec.m() != field.m()) throw InvalidArgument("spectrum belongs to a different field");
  const std::int64_t q = field.order();
  VerificationReport total;
  total.name = "theorem2";
  total.m = field.m();
  total.poly = field.poly();
  total.domain_size = static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(q);

  const int threads = workers_for(total.domain_size * 8);
  std::vector<VerificationReport> parts(static_cast<std::size_t>(q));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t bi = 0; bi < q; ++bi) {
    VerificationReport& part = parts[static_cast<std::size_t>(bi)];
    const Elem b = static_cast<Elem>(bi);
    for (Elem c = 0; c < static_cast<Elem>(q); ++c) {
      const KPair k = k_pair(field, b, c);
      const Elem lhs = field.mul(k.k1, k.k2);
      if (lhs == 0) {
        ++part.skipped[skip_reason::kKArgZero];
        continue;
      }
      const Elem rhs = lhs ^ k.k2;
      if (rhs == 0) {
        // Excluded by construction (k2 (k1 + 1) = 0 forces k2 = 0).
        ++part.skipped["rhs_arg_zero"];
        continue;
      }
      ++part.checked;
      if (spec[lhs] != spec[rhs]) {
        ++part.counterexample_count;
        if (part.counterexamples.size() < counterexample_cap)
          part.counterexamples.push_back(Counterexample{{b, c}, {}, lhs, rhs, spec[lhs], spec[rhs]});
      }
    }
  }
  for (const auto& part : parts) total.merge(part);
  total.finalize(counterexample_cap);
  return total;
}

}  // namespace kloost
