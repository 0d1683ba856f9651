#include "malle/bounds.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "malle/error.hpp"
#include "malle/malleinv.hpp"

namespace malle {
namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long smallest_prime(long n) {
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Parses "C<n>" (normalized) into n; 0 if the label is not of that form.
long parse_cyclic(const std::string& s) {
  if (s.size() < 2 || s[0] != 'C') return 0;
  long n = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return 0;
    n = n * 10 + (s[i] - '0');
  }
  return n;
}

// Order of an abelian label such as C12 or C2xC2xC2; 0 if not abelian-shaped.
long abelian_order(const std::string& s) {
  long order = 1;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t x = s.find('x', start);
    std::string part = s.substr(start, x == std::string::npos ? std::string::npos : x - start);
    long n = parse_cyclic(part);
    if (n == 0) return 0;
    order *= n;
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return order;
}

long parse_dihedral(const std::string& s) {
  if (s.size() < 2 || s[0] != 'D') return 0;
  return parse_cyclic("C" + s.substr(1));
}

TraceStep step(std::string rule, std::vector<std::pair<std::string, Rational>> inputs,
               Rational output, std::string note = {}, bool branch = false) {
  TraceStep s;
  s.rule = std::move(rule);
  s.inputs = std::move(inputs);
  s.output = std::move(output);
  s.note = std::move(note);
  s.branch = branch;
  return s;
}

Rational R(long v) { return make_rational(v); }

// Fills value and branch from the branch steps of the trace.
void settle(ExponentResult& r) {
  const TraceStep* best = nullptr;
  for (const auto& s : r.trace)
    if (s.branch && (!best || s.output > best->output)) best = &s;
  if (!best) throw InvariantError("exponent result without branch steps");
  r.value = best->output;
  r.branch = best->rule;
  if (replay(r) != r.value) throw InvariantError("trace replay disagrees with value");
}

}  // namespace

std::string normalize_label(std::string_view label) {
  std::string out;
  for (char c : label)
    if (c != '_' && c != ' ') out += c;
  return out;
}

// ---------------------------------------------------------------------------
// Registries

TorsionExponentRegistry TorsionExponentRegistry::seeded(TorsionMode mode) {
  TorsionExponentRegistry reg(mode);
  reg.prime_cyclic_rule_ = true;
  reg.add({"Q", "C_3", 2, make_rational(2784, 10000), "2-torsion of cubic fields (BSTTTZ)"});
  return reg;
}

void TorsionExponentRegistry::add(RegistryEntry e) {
  if (e.value > make_rational(1, 2))
    throw DomainError("torsion exponent " + to_string(e.value) + " exceeds the generic bound 1/2");
  if (e.value < 0) throw DomainError("torsion exponent must be non-negative");
  if (e.key < 2) throw DomainError("torsion modulus must be at least 2");
  e.label = normalize_label(e.label);
  entries_.push_back(std::move(e));
}

Sourced TorsionExponentRegistry::lookup(const std::string& base, const std::string& label,
                                        long modulus) const {
  if (mode_ == TorsionMode::LTorsionConjecture) return {Rational(0), "l-torsion conjecture"};
  Sourced best{make_rational(1, 2), "generic bound"};
  const std::string key = normalize_label(label);
  for (const auto& e : entries_)
    if ((e.base == kAnyBase || e.base == base) && e.label == key && e.key == modulus &&
        e.value < best.value)
      best = {e.value, e.note};
  if (prime_cyclic_rule_ && base == "Q") {
    long p = parse_cyclic(key);
    if (is_prime(p)) {
      Rational v = make_rational(1, 2) - make_rational(1, 2 * modulus * (p - 1));
      if (v < best.value) best = {v, "prime cyclic fields (PTBW)"};
    }
  }
  return best;
}

CountExponentRegistry CountExponentRegistry::seeded() { return CountExponentRegistry(true); }

void CountExponentRegistry::add(RegistryEntry e) {
  if (e.value <= 0) throw DomainError("count exponent must be positive");
  if (e.key < 1) throw DomainError("degree must be positive");
  e.label = normalize_label(e.label);
  entries_.push_back(std::move(e));
}

std::vector<Sourced> CountExponentRegistry::candidates(const std::string& base,
                                                       const std::string& label, long degree,
                                                       long order) const {
  std::vector<Sourced> out;
  const std::string key = normalize_label(label);
  for (const auto& e : entries_)
    if ((e.base == kAnyBase || e.base == base) && e.label == key && e.key == degree)
      out.push_back({e.value, e.note});
  if (!rules_) return out;

  if (long n = abelian_order(key); n > 1 && n == degree) {
    long p = smallest_prime(n);
    out.push_back({make_rational(p, n * (p - 1)), "abelian (Wright)"});
  }
  if (long l = parse_dihedral(key); l > 2 && is_prime(l)) {
    if (degree == l) {
      out.push_back({make_rational(3, l - 1), "D_l degree l (Kluners)"});
      if (base == "Q")
        out.push_back({make_rational(3, l - 1) - make_rational(1, l * l - l),
                       "D_l degree l over Q (Cohen-Thorne)"});
    }
    if (degree == 2 * l) out.push_back({make_rational(3, 2 * l), "D_l degree 2l (Kluners)"});
  }
  if (key == "C5:C4" && degree == 5)
    out.push_back({make_rational(39, 40), "C_5:C_4 degree 5 (Bhargava-Cojocaru-Thorne)"});
  if (order > 4 && degree == order)
    out.push_back({make_rational(3, 8), "regular degree, |G| > 4 (Ellenberg-Venkatesh)"});
  return out;
}

namespace {

RegistryEntry parse_entry(const std::string& rest, int line, const std::string& raw,
                          std::size_t offset, bool optional_base) {
  std::string body = rest, note;
  if (auto hash = body.find('#'); hash != std::string::npos) {
    note = body.substr(hash + 1);
    body = body.substr(0, hash);
    note.erase(0, note.find_first_not_of(' '));
    while (!note.empty() && (note.back() == ' ' || note.back() == '\r')) note.pop_back();
  }
  auto eq = body.find('=');
  if (eq == std::string::npos)
    throw ParseError("registry line needs '='", line, static_cast<int>(raw.size()) + 1);
  std::istringstream lhs(body.substr(0, eq));
  std::vector<std::string> tok;
  for (std::string t; lhs >> t;) tok.push_back(t);
  RegistryEntry e;
  if (tok.size() == 3) {
    e.base = tok[0];
    e.label = tok[1];
  } else if (tok.size() == 2 && optional_base) {
    e.base = kAnyBase;
    e.label = tok[0];
  } else {
    throw ParseError("expected [BASE] LABEL KEY before '='", line, static_cast<int>(offset) + 1);
  }
  try {
    std::size_t used = 0;
    e.key = std::stol(tok.back(), &used);
    if (used != tok.back().size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + tok.back() + "'", line, static_cast<int>(offset) + 1);
  }
  std::string value = body.substr(eq + 1);
  value.erase(0, value.find_first_not_of(' '));
  while (!value.empty() && (value.back() == ' ' || value.back() == '\r')) value.pop_back();
  try {
    e.value = parse_rational(value);
  } catch (const Error&) {
    throw ParseError("bad rational '" + value + "'", line,
                     static_cast<int>(offset + raw.substr(offset).find('=')) + 2);
  }
  e.note = note.empty() ? "registry file" : note;
  return e;
}

}  // namespace

void load_registry_text(std::string_view text, TorsionExponentRegistry& torsion,
                        CountExponentRegistry& counts) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    auto sp = raw.find(' ', first);
    std::string kind = raw.substr(first, sp == std::string::npos ? std::string::npos : sp - first);
    std::string rest = sp == std::string::npos ? std::string() : raw.substr(sp);
    if (kind == "D") {
      auto e = parse_entry(rest, line, raw, sp, false);
      try {
        torsion.add(std::move(e));
      } catch (const DomainError& err) {
        throw ParseError(err.what(), line, static_cast<int>(first) + 1);
      }
    } else if (kind == "a1") {
      counts.add(parse_entry(rest, line, raw, sp, true));
    } else {
      throw ParseError("unknown registry kind '" + kind + "'", line, static_cast<int>(first) + 1);
    }
  }
}

void load_registry_file(const std::string& path, TorsionExponentRegistry& torsion,
                        CountExponentRegistry& counts) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open registry file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  load_registry_text(ss.str(), torsion, counts);
}

// ---------------------------------------------------------------------------
// Traces

Rational TraceStep::input(const std::string& name) const {
  for (const auto& [k, v] : inputs)
    if (k == name) return v;
  throw DomainError("trace step '" + rule + "' has no input '" + name + "'");
}

Rational evaluate_step(const TraceStep& s) {
  const std::string& r = s.rule;
  auto in = [&](const char* n) { return s.input(n); };
  if (r == "kernel.torsion") return (in("D") + in("a1")) * in("t") / (in("m") - 1);
  if (r == "kernel.census" || r == "regular.census" || r == "special.census") return 1 / in("R");
  if (r == "regular.torsion") return (in("a1") + in("D")) / in("m");
  if (r == "refined.census") return 1 / (in("m") * (1 - 1 / in("p")));
  if (r == "refined.torsion") {
    Rational q = in("p1") - 1;
    return in("t") / (in("m") - 1) * (1 / q + make_rational(1, 2) - 1 / (2 * in("m") * q));
  }
  if (r == "special.torsion")
    return 1 / in("R") + (in("aH") + in("D") - in("r") / in("R")) / in("r");
  throw DomainError("no formula for trace rule '" + r + "'");
}

Rational replay(const ExponentResult& r) {
  bool any = false;
  Rational best;
  for (const auto& s : r.trace) {
    if (!s.branch) continue;
    Rational v = evaluate_step(s);
    if (!any || v > best) best = v;
    any = true;
  }
  if (!any) throw DomainError("trace has no branch steps");
  return best;
}

std::string format_exponent(const ExponentResult& r, int places) {
  std::string out = to_string(r.value) + " (" + to_decimal(r.value, places) + ")";
  if (r.plus_epsilon) out += " + eps";
  return out;
}

std::string format_trace(const ExponentResult& r) {
  std::ostringstream os;
  for (const auto& s : r.trace) {
    os << (s.branch ? "* " : "  ") << s.rule << "(";
    for (std::size_t i = 0; i < s.inputs.size(); ++i)
      os << (i ? ", " : "") << s.inputs[i].first << "=" << to_string(s.inputs[i].second);
    os << ") = " << to_string(s.output);
    if (!s.note.empty()) os << "  [" << s.note << "]";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// R-values

ROverride kluners_quadratic_override() {
  return {2, "Kluners: Gal(N1^/k) != C_2 wr H, so no tame prime divides N(d_{N1/M}) exactly once"};
}

long r_value(bool galois, long group_order, long p, const std::vector<ROverride>& overrides) {
  if (p < 2 || !is_prime(p)) throw DomainError("p must be prime");
  long r;
  if (galois) {
    if (group_order <= 0 || group_order % p != 0)
      throw DomainError("|G|(1 - 1/p) is not integral: p does not divide |G|");
    r = group_order / p * (p - 1);
  } else {
    r = p - 1;
  }
  for (const auto& o : overrides) {
    if (o.citation.empty()) throw DomainError("R override without a citation");
    r = std::max(r, o.value);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Upper-bound engine

namespace {

struct Resolver {
  const BoundContext& ctx;
  std::vector<std::string> stack;

  ExponentResult bound(const GroupAnalysis& a, DegreeChoice d, int depth);
  Sourced quotient_count(const PermGroup& H, int depth, std::vector<TraceStep>* trace);
};

Sourced Resolver::quotient_count(const PermGroup& H, int depth, std::vector<TraceStep>* trace) {
  const long t = static_cast<long>(H.order());
  const std::string label = structure_label(H);
  auto cands = ctx.counts.candidates(ctx.base, label, t, t);
  if (ctx.assume_malle_for_quotient && t > 1) {
    long p1 = smallest_prime(t);
    cands.push_back({make_rational(p1, t * (p1 - 1)), "Malle value assumed"});
  }
  const std::string key = label + "@" + std::to_string(t);
  bool cycle = std::find(stack.begin(), stack.end(), key) != stack.end();
  if (!cycle && depth < ctx.max_depth && t > 1 && H.is_transitive()) {
    stack.push_back(key);
    for (const auto& F : abelian_normal_subgroups(H)) {
      if (F.size() == H.order()) continue;
      GroupAnalysis inner = notation_parameters(H, F);
      try {
        ExponentResult r = bound(inner, DegreeChoice::Regular, depth + 1);
        cands.push_back({r.value, "recursive bound via normal subgroup of order " +
                                      std::to_string(F.size())});
        if (trace)
          for (auto s : r.trace) {
            s.rule = "inner." + s.rule;
            s.branch = false;
            s.note = label + ", F order " + std::to_string(F.size()) +
                     (s.note.empty() ? "" : "; " + s.note);
            trace->push_back(std::move(s));
          }
      } catch (const UnresolvedDependency&) {
      }
    }
    stack.pop_back();
  }
  if (cands.empty())
    throw UnresolvedDependency("need a1(" + label + ", " + std::to_string(t) + ") over base " +
                               ctx.base + ": no registry entry and no abelian normal subgroup");
  auto best = std::min_element(cands.begin(), cands.end(),
                               [](const Sourced& x, const Sourced& y) { return x.value < y.value; });
  return *best;
}

ExponentResult Resolver::bound(const GroupAnalysis& a, DegreeChoice d, int depth) {
  const long m = static_cast<long>(a.m), t = static_cast<long>(a.t), p = static_cast<long>(a.p);
  if (!a.in_F1 || m < 2) throw DomainError("group has no non-trivial abelian normal subgroup");
  if (t == 1)
    throw DomainError("H is trivial (G abelian): use the abelian count registry instead");
  if (d == DegreeChoice::Kernel && !a.in_F)
    throw DomainError("degree m requires a Frobenius group with the chosen F as kernel");

  ExponentResult out;
  const std::string hlabel = structure_label(*a.quotient);

  Sourced D{Rational(0), ""};
  bool first = true;
  for (long q : prime_divisors(m)) {
    Sourced c = ctx.torsion.lookup(ctx.base, hlabel, q);
    out.trace.push_back(step("D.lookup", {{"ell", R(q)}}, c.value, hlabel + ": " + c.source));
    if (first || c.value < D.value) D = c;
    first = false;
  }
  out.trace.push_back(step("D.min", {}, D.value, "min over primes dividing m"));

  Sourced a1 = quotient_count(*a.quotient, depth, &out.trace);
  out.trace.push_back(step("a1.min", {{"t", R(t)}}, a1.value, hlabel + ": " + a1.source));

  const long order = m * t;
  const long Rv = r_value(true, order, p);
  out.trace.push_back(step("R", {{"order", R(order)}, {"p", R(p)}}, R(Rv), "|G|(1 - 1/p)"));

  if (d == DegreeChoice::Kernel) {
    TraceStep tor = step("kernel.torsion", {{"D", D.value}, {"a1", a1.value}, {"t", R(t)}, {"m", R(m)}},
                         0, "(D + a1)t/(m - 1)", true);
    tor.output = evaluate_step(tor);
    // t/R = p/(m(p-1))
    Rational Rk = make_rational(Rv) / t;
    TraceStep cen = step("kernel.census", {{"R", Rk}}, 1 / Rk, "t/R = p/(m(p - 1))", true);
    out.trace.push_back(std::move(tor));
    out.trace.push_back(std::move(cen));
  } else {
    TraceStep tor = step("regular.torsion", {{"a1", a1.value}, {"D", D.value}, {"m", R(m)}}, 0,
                         "(a1 + D)/m", true);
    tor.output = evaluate_step(tor);
    TraceStep cen = step("regular.census", {{"R", R(Rv)}}, make_rational(1, Rv),
                         "1/R = p/(mt(p - 1))", true);
    out.trace.push_back(std::move(tor));
    out.trace.push_back(std::move(cen));
  }
  settle(out);
  return out;
}

}  // namespace

Sourced resolve_quotient_count(const PermGroup& H, const BoundContext& ctx, int depth,
                               std::vector<TraceStep>* trace) {
  Resolver r{ctx, {}};
  return r.quotient_count(H, depth, trace);
}

ExponentResult theorem_bound(const GroupAnalysis& analysis, DegreeChoice degree,
                             const BoundContext& ctx) {
  Resolver r{ctx, {}};
  ExponentResult out = r.bound(analysis, degree, 0);
  const auto& G = *analysis.group;
  // Flag the two table rows whose printed values the formulas do not reproduce.
  if (degree == DegreeChoice::Kernel && ctx.base == "Q" && analysis.m == 8 && analysis.t == 7 &&
      G.degree() == 8)
    out.flags.push_back("table prints 0.595 for C_2^3:C_7 at d=8; not reproducible from the "
                        "stated registry values (0.625 with D = 11/24, 0.65625 refined)");
  if (degree == DegreeChoice::Kernel && analysis.m == 103 && analysis.t == 17)
    out.flags.push_back("table lists 0.0104 and 0.09369 for C_103:C_17; the A and a columns are "
                        "transposed (a = 1/96 = 0.0104)");
  return out;
}

bool corollary_mode_check(const GroupAnalysis& a) {
  BoundContext ctx;
  ctx.torsion.set_mode(TorsionMode::LTorsionConjecture);
  ctx.assume_malle_for_quotient = true;
  const long order = static_cast<long>(a.group->order());
  if (theorem_bound(a, DegreeChoice::Regular, ctx).value !=
      malle_a_regular_closed_form(order, smallest_prime(order)))
    return false;
  const long m = static_cast<long>(a.m), t = static_cast<long>(a.t);
  if (a.in_F && m > 2 && is_prime(m) && a.quotient->is_abelian() &&
      structure_label(*a.quotient) == "C_" + std::to_string(t)) {
    Rational closed = malle_a_frobenius_closed_form(m, t, static_cast<long>(a.p),
                                                    static_cast<long>(a.p1));
    if (theorem_bound(a, DegreeChoice::Kernel, ctx).value != closed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Refinements and special degrees

ExponentResult refined_ptbw_bound(long m, long t, long p, long p1) {
  if (!is_prime(t)) throw DomainError("t is composite; use theorem_bound for this group");
  if (t != p1) throw DomainError("refinement requires t = p1");
  if (m < 3 || !is_prime(p) || m % p != 0 || smallest_prime(m) != p)
    throw DomainError("p must be the smallest prime dividing m");
  if ((m - 1) % t != 0) throw DomainError("t must divide m - 1");
  ExponentResult out;
  out.trace.push_back(step("exceptional-set", {{"p1", R(p1)}}, make_rational(1, 4 * p1 - 4),
                           "eps0 < 1/(4p1 - 4): satisfied"));
  TraceStep cen = step("refined.census", {{"m", R(m)}, {"p", R(p)}}, 0, "1/(m(1 - 1/p))", true);
  cen.output = evaluate_step(cen);
  TraceStep tor = step("refined.torsion", {{"m", R(m)}, {"t", R(t)}, {"p1", R(p1)}}, 0,
                       "(t/(m-1))(1/(p1-1) + 1/2 - 1/(2m(p1-1)))", true);
  tor.output = evaluate_step(tor);
  out.trace.push_back(std::move(cen));
  out.trace.push_back(std::move(tor));
  settle(out);
  return out;
}

SpecialCase parse_special_case(std::string_view label) {
  if (label == "A4_deg6") return SpecialCase::A4Deg6;
  if (label == "C3sq_C4_deg6") return SpecialCase::C3sqC4Deg6;
  if (label == "C3sq_C2_deg6") return SpecialCase::C3sqC2Deg6;
  if (label == "D6_deg6") return SpecialCase::D6Deg6;
  if (label == "C2cube_C7_deg14") return SpecialCase::C2cubeC7Deg14;
  throw DomainError("unknown special case '" + std::string(label) + "'");
}

std::string to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::A4Deg6: return "A4_deg6";
    case SpecialCase::C3sqC4Deg6: return "C3sq_C4_deg6";
    case SpecialCase::C3sqC2Deg6: return "C3sq_C2_deg6";
    case SpecialCase::D6Deg6: return "D6_deg6";
    case SpecialCase::C2cubeC7Deg14: return "C2cube_C7_deg14";
  }
  return "?";
}

ExponentResult special_degree_bound(SpecialCase c, const BoundContext& ctx) {
  // M1: intermediate field, H its Galois group of degree [M1:k]; r = [N1:M1].
  std::string hlabel;
  long hdeg = 0, r = 0;
  bool quadratic_step = false;
  long p_kernel = 0;
  switch (c) {
    case SpecialCase::A4Deg6:
      hlabel = "C_3", hdeg = 3, r = 2, quadratic_step = true;
      break;
    case SpecialCase::C2cubeC7Deg14:
      hlabel = "C_7", hdeg = 7, r = 2, quadratic_step = true;
      break;
    case SpecialCase::C3sqC4Deg6:
    case SpecialCase::C3sqC2Deg6:
    case SpecialCase::D6Deg6:
      hlabel = "C_2", hdeg = 2, r = 3, p_kernel = 3;
      break;
  }
  ExponentResult out;
  long Rv;
  if (quadratic_step) {
    // Non-Galois quadratic step: p - 1 = 1 raised to 2 by the Kluners lemma.
    Rv = r_value(false, 0, 2, {kluners_quadratic_override()});
    out.trace.push_back(step("R", {{"p", R(2)}}, R(Rv), kluners_quadratic_override().citation));
  } else {
    Rv = r_value(false, 0, p_kernel);
    out.trace.push_back(step("R", {{"p", R(p_kernel)}}, R(Rv), "non-Galois cubic step: p - 1"));
  }
  auto cands = ctx.counts.candidates(ctx.base, hlabel, hdeg, hdeg);
  if (cands.empty()) throw UnresolvedDependency("need a1(" + hlabel + ", " + std::to_string(hdeg) + ")");
  Sourced aH = *std::min_element(cands.begin(), cands.end(),
                                 [](const Sourced& x, const Sourced& y) { return x.value < y.value; });
  Sourced D = ctx.torsion.lookup(ctx.base, hlabel, r);
  out.trace.push_back(step("a1.min", {{"t", R(hdeg)}}, aH.value, hlabel + ": " + aH.source));
  out.trace.push_back(step("D.lookup", {{"ell", R(r)}}, D.value, hlabel + ": " + D.source));
  out.trace.push_back(step("discriminant", {{"r", R(r)}}, make_rational(1, r),
                           "d_{N1} = d_{M1}^r N(d_{N1/M1}): M1 ranges up to X^{1/r}"));
  TraceStep cen = step("special.census", {{"R", R(Rv)}}, make_rational(1, Rv), "X^{1/R}", true);
  TraceStep tor = step("special.torsion", {{"aH", aH.value}, {"D", D.value}, {"r", R(r)}, {"R", R(Rv)}},
                       0, "1/R + (1/r)(aH + D - r/R): (X^{1/r})^{aH + D - r/R} X^{1/R}", true);
  tor.output = evaluate_step(tor);
  out.trace.push_back(std::move(cen));
  out.trace.push_back(std::move(tor));
  settle(out);
  if (out.branch == "special.census") out.branch = "census term X^{1/" + std::to_string(Rv) + "} dominates";
  return out;
}

LimitationResult limitation_analysis(const Rational& aH, const Rational& D, long rel_degree, long Rv) {
  if (Rv < 1 || rel_degree < 2) throw DomainError("limitation analysis needs R >= 1 and r >= 2");
  LimitationResult out;
  Rational slack = aH + D - make_rational(rel_degree, Rv);
  out.holds = slack <= 0;
  out.exponent = out.holds ? make_rational(1, Rv) : Rational((aH + D) / rel_degree);
  return out;
}

}  // namespace malle
