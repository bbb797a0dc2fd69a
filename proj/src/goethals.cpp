#include "kloost/goethals.hpp"

#include <stdexcept>

#include "kloost/errors.hpp"
#include "kloost/parallel.hpp"

namespace kloost {

namespace {

void guard(const Field& field, int limit, bool force, const char* what) {
  if (field.m() > limit && !force)
    throw CostGuardError(std::string(what) + " is limited to m <= " + std::to_string(limit) +
                         " (got m = " + std::to_string(field.m()) + "); pass --force to override");
}

struct Tables {
  std::vector<Elem> square, cube;

  explicit Tables(const Field& field) : square(field.order()), cube(field.order()) {
    for (Elem a = 0; a < field.order(); ++a) {
      square[a] = field.square(a);
      cube[a] = field.mul(square[a], a);
    }
  }
};

template <bool Parallel>
Mu2Table fast_table(const Field& field, bool force) {
  guard(field, kSweepGuard, force, "mu2 sweep");
  const Tables t(field);
  const std::int64_t q = field.order();
  Mu2Table table(field.m());
  const int threads = Parallel ? workers_for(static_cast<std::uint64_t>(q) * q * q) : 1;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (Parallel)
  for (std::int64_t bi = 0; bi < q; ++bi) {
    const Elem b = static_cast<Elem>(bi);
    const Elem b2 = t.square[b];
    for (Elem x = 0; x < q; ++x) {
      for (Elem u = 0; u < q; ++u) {
        const Elem s = 1 ^ x ^ u;
        if (u == x || s == 0) continue;
        const Elem p = b2 ^ t.square[u] ^ field.mul(x ^ u, s) ^ field.mul(x, u);
        const QuadRoots roots = field.solve_quadratic(s, p);
        if (roots.count != 2) continue;
        bool distinct = true;
        for (Elem r : roots.view()) distinct = distinct && r != x && r != u;
        if (!distinct) continue;
        const Elem c = t.cube[x] ^ t.cube[u] ^ t.cube[s] ^ field.mul(p, s);
        table.at(b, c) += 2;
      }
    }
  }
  return table;
}

ClosedForm closed_form(const Field& field, const Spectrum& spec, Elem b, Elem c, bool parity_aware) {
  const KPair k = k_pair(field, b, c);
  const Elem arg = field.mul(k.k1, k.k2);
  if (arg == 0) return {};
  const std::int64_t q = field.order();
  const std::int64_t kv = spec[arg];
  const std::int64_t sign = field.trace(b) ? -1 : 1;
  const bool tr_c = field.trace(c) != 0;
  const bool m_odd = field.m() % 2 == 1;
  const bool first_case = parity_aware ? (m_odd == tr_c) : tr_c;
  const std::int64_t numerator = first_case ? q - 8 + sign * (kv - 3) : q - 2 - sign * (kv + 3);
  return {ClosedStatus::Value, numerator};
}

}  // namespace

const char* to_string(ClosedStatus status) {
  switch (status) {
    case ClosedStatus::Value: return "value";
    case ClosedStatus::NotApplicable: return "not_applicable";
    case ClosedStatus::Inconsistent: return "inconsistent";
  }
  return "?";
}

KPair k_pair(const Field& field, Elem b, Elem c) {
  const Elem b2 = field.square(b);
  return {b2 ^ c ^ 1, b2 ^ b ^ c ^ field.sqrt(c)};
}

std::uint64_t mu2_bruteforce(const Field& field, Elem b, Elem c, bool force) {
  guard(field, kBruteforceGuard, force, "mu2 brute force");
  const Tables t(field);
  const std::int64_t q = field.order();
  const Elem b2 = t.square[b];
  std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : count) \
    num_threads(workers_for(static_cast<std::uint64_t>(q) * q * q))
  for (std::int64_t xi = 0; xi < q; ++xi) {
    const Elem x = static_cast<Elem>(xi);
    for (Elem y = 0; y < q; ++y) {
      if (y == x) continue;
      for (Elem z = 0; z < q; ++z) {
        if (z == x || z == y) continue;
        const Elem u = 1 ^ x ^ y ^ z;
        if (u == x || u == y || u == z) continue;
        if ((t.cube[x] ^ t.cube[y] ^ t.cube[z] ^ t.cube[u]) != c) continue;
        const Elem sym = field.mul(x, y) ^ field.mul(x, z) ^ field.mul(x, u) ^ field.mul(y, z) ^
                         field.mul(y, u) ^ field.mul(z, u);
        if ((t.square[u] ^ sym) == b2) ++count;
      }
    }
  }
  return count;
}

std::uint64_t mu2_fast(const Field& field, Elem b, Elem c) {
  const std::int64_t q = field.order();
  const Elem b2 = field.square(b);
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count) num_threads(workers_for(static_cast<std::uint64_t>(q) * q))
  for (std::int64_t xi = 0; xi < q; ++xi) {
    const Elem x = static_cast<Elem>(xi);
    const Elem cx = c ^ field.cube(x);
    for (Elem u = 0; u < q; ++u) {
      const Elem s = 1 ^ x ^ u;
      if (u == x || s == 0) continue;
      const Elem p = b2 ^ field.square(u) ^ field.mul(x ^ u, s) ^ field.mul(x, u);
      if ((cx ^ field.cube(u)) != (field.cube(s) ^ field.mul(p, s))) continue;
      const QuadRoots roots = field.solve_quadratic(s, p);
      if (roots.count != 2) continue;
      if (roots.root[0] != x && roots.root[0] != u && roots.root[1] != x && roots.root[1] != u) count += 2;
    }
  }
  return count;
}

Mu2Table mu2_bruteforce_table(const Field& field, bool force) {
  guard(field, kBruteforceGuard, force, "mu2 brute force");
  const Tables t(field);
  const std::int64_t q = field.order();
  Mu2Table table(field.m());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers_for(static_cast<std::uint64_t>(q) * q * q))
  for (std::int64_t xi = 0; xi < q; ++xi) {
    const Elem x = static_cast<Elem>(xi);
    for (Elem y = 0; y < q; ++y) {
      if (y == x) continue;
      for (Elem z = 0; z < q; ++z) {
        if (z == x || z == y) continue;
        const Elem u = 1 ^ x ^ y ^ z;
        if (u == x || u == y || u == z) continue;
        const Elem sym = field.mul(x, y) ^ field.mul(x, z) ^ field.mul(x, u) ^ field.mul(y, z) ^
                         field.mul(y, u) ^ field.mul(z, u);
        const Elem b = field.sqrt(t.square[u] ^ sym);
        const Elem c = t.cube[x] ^ t.cube[y] ^ t.cube[z] ^ t.cube[u];
#pragma omp atomic
        ++table.at(b, c);
      }
    }
  }
  return table;
}

Mu2Table mu2_fast_table(const Field& field, bool force) { return fast_table<true>(field, force); }
Mu2Table mu2_fast_table_serial(const Field& field, bool force) { return fast_table<false>(field, force); }

ClosedForm mu2_closed_corrected(const Field& field, const Spectrum& spec, Elem b, Elem c) {
  ClosedForm f = closed_form(field, spec, b, c, true);
  if (f.status == ClosedStatus::Value && (f.numerator % 6 != 0 || f.numerator < 0))
    throw std::logic_error("corrected closed form is not a nonnegative integer at b=" + elem_hex(b) +
                           " c=" + elem_hex(c) + ": " + std::to_string(f.numerator) + "/6");
  return f;
}

ClosedForm mu2_closed_original(const Field& field, const Spectrum& spec, Elem b, Elem c) {
  ClosedForm f = closed_form(field, spec, b, c, false);
  if (f.status == ClosedStatus::Value && (f.numerator % 6 != 0 || f.numerator < 0))
    f.status = ClosedStatus::Inconsistent;
  return f;
}

bool Mu2Report::agree() const {
  if (brute && fast && *brute != *fast) return false;
  if (applicable() && fast && !closed_corrected.matches(*fast)) return false;
  return true;
}

std::optional<bool> Mu2Report::original_agrees() const {
  if (closed_original.status == ClosedStatus::NotApplicable) return std::nullopt;
  const auto& count = fast ? fast : brute;
  if (!count) return std::nullopt;
  return closed_original.matches(*count);
}

Mu2Report mu2_report(const Field& field, const Spectrum& spec, Elem b, Elem c, bool force) {
  if (b >= field.order() || c >= field.order()) throw InvalidArgument("b or c outside the field");
  Mu2Report r;
  r.b = b;
  r.c = c;
  r.k = k_pair(field, b, c);
  if (field.m() <= kBruteforceGuard || force) r.brute = mu2_bruteforce(field, b, c, force);
  r.fast = mu2_fast(field, b, c);
  r.closed_corrected = mu2_closed_corrected(field, spec, b, c);
  r.closed_original = mu2_closed_original(field, spec, b, c);
  return r;
}

nlohmann::json to_json(const Field& field, const Mu2Report& r) {
  auto count = [](const std::optional<std::uint64_t>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  auto closed = [](const ClosedForm& f) -> nlohmann::json {
    const auto v = f.value();
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  const auto orig = r.original_agrees();
  return {
      {"m", field.m()},
      {"poly_hex", poly_hex(field.poly())},
      {"b_hex", elem_hex(r.b)},
      {"c_hex", elem_hex(r.c)},
      {"k1_hex", elem_hex(r.k.k1)},
      {"k2_hex", elem_hex(r.k.k2)},
      {"brute", count(r.brute)},
      {"fast", count(r.fast)},
      {"mu2", r.fast ? nlohmann::json(*r.fast / kOrderedPerSolution) : nlohmann::json(nullptr)},
      {"closed_corrected", closed(r.closed_corrected)},
      {"closed_original", closed(r.closed_original)},
      {"closed_original_status", to_string(r.closed_original.status)},
      {"closed_original_numerator", r.closed_original.numerator},
      {"closed_original_label", "reconstructed-original"},
      {"applicable", r.applicable()},
      {"agree", r.agree()},
      {"original_agrees", orig ? nlohmann::json(*orig) : nlohmann::json(nullptr)},
  };
}

const char* to_string(SymmetryForm form) { return form == SymmetryForm::AsPrinted ? "as-printed" : "restricted"; }

VerificationReport symmetry_check(const Field& field, const Mu2Table& table, SymmetryForm form,
                                  std::size_t counterexample_cap) {
  if (table.m() != field.m()) throw InvalidArgument("table belongs to a different field");
  const std::int64_t q = field.order();
  const bool restricted = form == SymmetryForm::Restricted;
  VerificationReport report;
  report.name = std::string("symmetry(") + (field.m() % 2 == 0 ? "m even, " : "m odd, ") + to_string(form) + ")";
  report.m = field.m();
  report.poly = field.poly();
  report.domain_size = 2 * static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(q);

  auto degenerate = [&](Elem b, Elem c) {
    const KPair k = k_pair(field, b, c);
    return field.mul(k.k1, k.k2) == 0;
  };
  auto record = [&](Elem b, Elem c, Elem b2, Elem c2, const char* relation, std::int64_t lhs, std::int64_t rhs) {
    if (restricted && (degenerate(b, c) || degenerate(b2, c2))) {
      ++report.skipped[skip_reason::kKArgZero];
      return;
    }
    ++report.checked;
    if (lhs == rhs) return;
    ++report.counterexample_count;
    if (report.counterexamples.size() < counterexample_cap)
      report.counterexamples.push_back(Counterexample{{b, c}, relation, 0, 0, lhs, rhs});
  };

  const std::int64_t low = (q - 8) / 3, high = (q - 2) / 3;
  for (Elem b = 0; b < q; ++b) {
    for (Elem c = 0; c < q; ++c) {
      const std::int64_t here = table.at(b, c);
      const std::int64_t b1 = table.at(b ^ 1, c);
      const std::int64_t c1 = table.at(b, c ^ 1);
      if (field.m() % 2 == 0) {
        record(b, c, b ^ 1, c, "mu2(b,c)=mu2(b+1,c)", here, b1);
        record(b, c, b, c ^ 1, "mu2(b,c)=mu2(b,c+1)", here, c1);
      } else {
        const bool tr_c = field.trace(c) != 0;
        const bool tr_key = field.trace(restricted ? b : c) != 0;
        // -1 flags a sum of ordered counts that is not a multiple of 6
        const std::int64_t sum_b = here + b1, sum_c = here + c1;
        record(b, c, b ^ 1, c, "mu2(b,c)+mu2(b+1,c)", sum_b % 6 ? -1 : sum_b / 6, tr_c ? low : high);
        record(b, c, b, c ^ 1, "mu2(b,c)+mu2(b,c+1)", sum_c % 6 ? -1 : sum_c / 6, tr_key ? high : low);
      }
    }
  }
  report.finalize(counterexample_cap);
  return report;
}

VerificationReport symmetry_check(const Field& field, SymmetryForm form, bool force, std::size_t counterexample_cap) {
  return symmetry_check(field, mu2_fast_table(field, force), form, counterexample_cap);
}

VerificationReport closed_form_check(const Field& field, const Spectrum& spec, const Mu2Table& table, bool original,
                                     std::size_t counterexample_cap) {
  if (table.m() != field.m() || spec.m() != field.m()) throw InvalidArgument("inputs belong to different fields");
  const Elem q = field.order();
  VerificationReport report;
  report.name = original ? "closed-form(reconstructed-original)" : "closed-form(corrected)";
  report.m = field.m();
  report.poly = field.poly();
  report.domain_size = static_cast<std::uint64_t>(q) * q;
  for (Elem b = 0; b < q; ++b) {
    for (Elem c = 0; c < q; ++c) {
      const ClosedForm f =
          original ? mu2_closed_original(field, spec, b, c) : mu2_closed_corrected(field, spec, b, c);
      if (f.status == ClosedStatus::NotApplicable) {
        ++report.skipped[skip_reason::kKArgZero];
        continue;
      }
      ++report.checked;
      const std::uint64_t ordered = table.at(b, c);
      if (f.matches(ordered)) continue;
      ++report.counterexample_count;
      if (report.counterexamples.size() < counterexample_cap)
        report.counterexamples.push_back(Counterexample{
            {b, c}, f.status == ClosedStatus::Inconsistent ? "6*mu2 vs non-integral closed form" : "6*mu2 vs 6*closed form",
            0, 0, static_cast<std::int64_t>(ordered), f.numerator});
    }
  }
  report.finalize(counterexample_cap);
  return report;
}

}  // namespace kloost
