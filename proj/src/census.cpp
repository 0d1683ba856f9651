#include "malle/census.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "malle/error.hpp"
#include "malle/factor.hpp"
#include "malle/order.hpp"
#include "malle/quadclass.hpp"
#include "malle/report.hpp"

namespace malle {
namespace {

using i128 = __int128;

// Hermite constants γ_k for k = 1..5.
double hermite_constant(int k) {
  switch (k) {
    case 1: return 1.0;
    case 2: return 2.0 / std::sqrt(3.0);
    case 3: return std::cbrt(2.0);
    case 4: return std::sqrt(2.0);
    case 5: return std::pow(8.0, 0.2);
    default: throw DomainError("hermite_constant: dimension out of range");
  }
}

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool is_square_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

// Largest s² dividing n (n > 0, n < 2^62).
std::uint64_t square_part(std::uint64_t n) {
  std::uint64_t sq = 1;
  std::uint64_t p = 2;
  for (; p * p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % (p * p) == 0) {
      n /= p * p;
      sq *= p * p;
    }
    if (n % p == 0) n /= p;
  }
  // What is left has at most two prime factors above the cube root.
  if (n > 1 && is_square_u64(n)) sq *= n;
  return sq;
}

bool cubic_has_integer_root(long long a, long long b, long long c) {
  if (c == 0) return true;
  auto f = [&](long long x) {
    return static_cast<i128>(x) * x * x + static_cast<i128>(a) * x * x + static_cast<i128>(b) * x + c;
  };
  const long long m = std::llabs(c);
  for (long long d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    for (long long r : {d, -d, m / d, -(m / d)})
      if (f(r) == 0) return true;
  }
  return false;
}

bool label_matches(const std::vector<std::string>& labels, const GaloisLabel& g) {
  if (labels.empty()) return true;
  for (const auto& l : labels)
    if (l == g.name || l == g.id()) return true;
  return false;
}

bool labels_only(const std::vector<std::string>& labels, const std::string& name, const std::string& id) {
  if (labels.empty()) return false;
  for (const auto& l : labels)
    if (l != name && l != id) return false;
  return true;
}

bool record_less(const NumberFieldRecord& x, const NumberFieldRecord& y) {
  BigInt ax = abs(x.field_disc), ay = abs(y.field_disc);
  if (ax != ay) return ax < ay;
  if (x.field_disc != y.field_disc) return x.field_disc < y.field_disc;
  return lex_less(x.defining_poly, y.defining_poly);
}

// One slice fixes (a_{n-1}, a_{n-2}); inner coefficients vary in a box.
struct Slice {
  long long a1 = 0, a2 = 0;
  std::vector<long long> inner_bound;  // |a_{n-k}| bound for k = 3..n
  std::uint64_t size = 0;              // points in the outer box
  double T2 = 0;
};

std::vector<Slice> make_slices(int n, long long X) {
  std::vector<Slice> out;
  for (long long a1 = 0; a1 <= n / 2; ++a1) {
    const double B = hunter_bound(n, a1, X);
    // s2 = a1² - 2 a2 and |s2| <= T2 <= B
    const long long lo = static_cast<long long>(std::ceil((a1 * a1 - B) / 2 - 1e-9));
    const long long hi = static_cast<long long>(std::floor((a1 * a1 + B) / 2 + 1e-9));
    std::vector<long long> inner;
    std::uint64_t size = 1;
    for (int k = 3; k <= n; ++k) {
      long long bnd = static_cast<long long>(std::floor(binomial(n, k) * std::pow(B / n, k / 2.0) + 1e-9));
      inner.push_back(bnd);
      std::uint64_t w = 2 * static_cast<std::uint64_t>(bnd) + 1;
      if (k == n) w -= 1;  // a_0 != 0
      size *= w;
    }
    for (long long a2 = lo; a2 <= hi; ++a2) out.push_back({a1, a2, inner, size, B});
  }
  return out;
}

class SliceWorker {
 public:
  SliceWorker(const CensusParams& p, std::uint64_t seed) : p_(p), seed_(seed) {
    c3_only_ = p.degree == 3 && labels_only(p.labels, "C3", "3T1");
    s3_only_ = p.degree == 3 && labels_only(p.labels, "S3", "3T2");
  }

  std::vector<NumberFieldRecord> run(const Slice& s) {
    std::map<std::string, NumberFieldRecord> found;
    const int n = p_.degree;
    std::vector<long long> coeffs(n + 1, 0);  // coeffs[i] = a_i
    coeffs[n] = 1;
    coeffs[n - 1] = s.a1;
    coeffs[n - 2] = s.a2;
    // Power sums s_1, s_2 of the roots (Newton).
    std::vector<i128> sums(n + 1, 0);
    sums[1] = -s.a1;
    sums[2] = static_cast<i128>(s.a1) * s.a1 - 2 * static_cast<i128>(s.a2);
    inner(s, 0, coeffs, sums, found);
    std::vector<NumberFieldRecord> out;
    for (auto& [k, r] : found) out.push_back(std::move(r));
    return out;
  }

 private:
  // Level k = 3..n fixes c_k = a_{n-k}. Besides the outer box, |s_k| <= T2^{k/2}
  // and Newton's identity s_k = -(k c_k + sum_{j<k} c_j s_{k-j}) bound c_k.
  void inner(const Slice& s, std::size_t level, std::vector<long long>& coeffs, std::vector<i128>& sums,
             std::map<std::string, NumberFieldRecord>& found) {
    const int n = p_.degree;
    if (level == s.inner_bound.size()) {
      consider(coeffs, found);
      return;
    }
    const int k = 3 + static_cast<int>(level);
    const int idx = n - k;
    i128 S = 0;
    for (int j = 1; j < k; ++j) S += static_cast<i128>(coeffs[n - j]) * sums[k - j];
    const double sk = std::pow(s.T2, k / 2.0) * (1 + 1e-12) + 1e-9;
    const double Sd = static_cast<double>(S);
    long long lo = static_cast<long long>(std::ceil((-Sd - sk) / k));
    long long hi = static_cast<long long>(std::floor((-Sd + sk) / k));
    lo = std::max(lo, -s.inner_bound[level]);
    hi = std::min(hi, s.inner_bound[level]);
    for (long long v = lo; v <= hi; ++v) {
      if (idx == 0 && v == 0) continue;
      coeffs[idx] = v;
      sums[k] = -(S + static_cast<i128>(k) * v);
      inner(s, level + 1, coeffs, sums, found);
    }
  }

  void consider(const std::vector<long long>& coeffs, std::map<std::string, NumberFieldRecord>& found) {
    const int n = p_.degree;
    const long long X = p_.max_disc;
    if (n == 3) {
      const i128 a = coeffs[2], b = coeffs[1], c = coeffs[0];
      const i128 D = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
      if (D == 0) return;
      const auto absD = static_cast<std::uint64_t>(D < 0 ? -D : D);
      const bool square = D > 0 && is_square_u64(absD);
      if (c3_only_ && !square) return;
      if (s3_only_ && square) return;
      if (absD / square_part(absD) > static_cast<std::uint64_t>(X)) return;
      if (cubic_has_integer_root(coeffs[2], coeffs[1], coeffs[0])) return;
    }
    std::vector<BigInt> c;
    for (long long v : coeffs) c.emplace_back(static_cast<long>(v));
    IntPoly f(c);
    const BigInt Xb(static_cast<long>(X));
    if (n > 3) {
      const BigInt D = poly_disc(f);
      if (D == 0) return;
      BigInt sq = 1;
      for (const auto& [q, e] : factorize(D))
        for (unsigned i = 0; i < e / 2; ++i) sq *= q * q;
      if (BigInt(abs(D) / sq) > Xb) return;
      if (!is_irreducible(f)) return;
    }
    if (p_.complex_pairs && (n - real_root_count(f)) / 2 != *p_.complex_pairs) return;
    MaximalOrder mo = maximal_order(f);
    if (BigInt(abs(mo.field_disc)) > Xb) return;
    if (n == 3) {
      const bool square = mo.field_disc > 0 && is_square(mo.field_disc);
      if ((c3_only_ && !square) || (s3_only_ && square)) return;
    }
    IntPoly g = canonical_generator(mo);
    std::string key = coeff_list(g);
    if (found.count(key)) return;
    NumberFieldRecord r = make_record_canonical(g, mo, seed_);
    if (!label_matches(p_.labels, r.galois)) return;
    if (std::fabs(r.field_disc.get_d()) <= minkowski_bound(n, r.signature.r2))
      throw InvariantError("census: field below the Minkowski bound: " + to_string(g));
    found.emplace(std::move(key), std::move(r));
  }

  const CensusParams& p_;
  std::uint64_t seed_;
  bool c3_only_ = false, s3_only_ = false;
};

nlohmann::ordered_json params_json(const CensusParams& p) {
  nlohmann::ordered_json j;
  j["degree"] = p.degree;
  j["labels"] = p.labels;
  j["max_disc"] = p.max_disc;
  if (p.complex_pairs)
    j["complex_pairs"] = *p.complex_pairs;
  else
    j["complex_pairs"] = nullptr;
  return j;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void save_checkpoint(const std::string& path, const CensusParams& p, const std::vector<char>& done,
                     const std::vector<NumberFieldRecord>& records) {
  nlohmann::ordered_json j;
  j["params"] = params_json(p);
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < done.size(); ++i)
    if (done[i]) ids.push_back(i);
  j["done"] = ids;
  std::vector<std::string> rows;
  for (const auto& r : records) rows.push_back(to_csv(r));
  j["records"] = rows;
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write checkpoint " + path);
  out << j.dump(1) << "\n";
}

}  // namespace

double hunter_bound(int n, long long a, long long X) {
  if (n < 2 || n > 6) throw DomainError("hunter_bound: degree must be 2..6");
  return static_cast<double>(a * a) / n +
         hermite_constant(n - 1) * std::pow(static_cast<double>(X) / n, 1.0 / (n - 1));
}

IntPoly quadratic_canonical(long long D) {
  if (!is_fundamental_discriminant(D)) throw DomainError("not a fundamental discriminant: " + std::to_string(D));
  if (((D % 4) + 4) % 4 == 1)
    return IntPoly(std::vector<BigInt>{BigInt(static_cast<long>((1 - D) / 4)), -1, 1});
  return IntPoly(std::vector<BigInt>{BigInt(static_cast<long>(-D / 4)), 0, 1});
}

NumberFieldRecord quadratic_record(long long D) {
  NumberFieldRecord r;
  r.defining_poly = quadratic_canonical(D);
  r.degree = 2;
  r.field_disc = static_cast<long>(D);
  r.poly_disc = static_cast<long>(D);
  r.index = 1;
  r.galois = GaloisLabel{2, 1, "C2", Confidence::Certified};
  r.signature = D > 0 ? Signature{2, 0} : Signature{0, 1};
  return r;
}

CensusCatalog enumerate_quadratic(long long X) {
  if (X < 3) throw DomainError("enumerate_quadratic: X must be at least 3");
  CensusCatalog c;
  c.params.degree = 2;
  c.params.max_disc = X;
  for (long long D : fundamental_discriminants(X)) c.records.push_back(quadratic_record(D));
  c.box_points = static_cast<std::uint64_t>(2 * X);
  c.completeness_certificate =
      "fundamental discriminants |D| <= " + std::to_string(X) + " by squarefree sieve; complete by construction";
  return c;
}

CensusCatalog enumerate_fields(const CensusParams& params, const CensusOptions& options) {
  const int n = params.degree;
  if (n < 3 || n > 6) throw DomainError("enumerate_fields: degree must be 3..6");
  if (params.max_disc < 1) throw DomainError("enumerate_fields: max_disc must be positive");
  const auto slices = make_slices(n, params.max_disc);
  std::vector<char> done(slices.size(), 0);
  std::vector<NumberFieldRecord> preloaded;

  if (options.resume) {
    std::ifstream in(options.checkpoint_path);
    if (!in) throw DomainError("cannot read checkpoint " + options.checkpoint_path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j["params"].dump() != nlohmann::json(params_json(params)).dump())
      throw DomainError("checkpoint parameters differ from the requested census");
    for (std::size_t id : j["done"].get<std::vector<std::size_t>>()) {
      if (id >= done.size()) throw DomainError("checkpoint slice id out of range");
      done[id] = 1;
    }
    for (const auto& row : j["records"]) preloaded.push_back(parse_record_csv(row.get<std::string>()));
  }

  // Deterministic selection: the longest prefix of pending slices within budget.
  std::vector<std::size_t> todo;
  std::uint64_t planned = 0;
  bool truncated = false;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (done[i]) continue;
    if (options.budget && planned + slices[i].size > options.budget) {
      truncated = true;
      break;
    }
    planned += slices[i].size;
    todo.push_back(i);
  }

  std::vector<std::vector<NumberFieldRecord>> results(slices.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    SliceWorker worker(params, options.seed);
    while (true) {
      if (failed.load() || (options.stop && options.stop->load())) return;
      std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      const std::size_t id = todo[k];
      try {
        results[id] = worker.run(slices[id]);
        done[id] = 1;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const unsigned w = std::max(1u, options.workers);
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < w; ++i) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  std::map<std::string, NumberFieldRecord> merged;
  for (auto& r : preloaded) merged.emplace(coeff_list(r.defining_poly), std::move(r));
  std::uint64_t examined = 0;
  for (std::size_t id = 0; id < slices.size(); ++id) {
    if (!done[id]) continue;
    examined += slices[id].size;
    for (auto& r : results[id]) merged.emplace(coeff_list(r.defining_poly), std::move(r));
  }
  CensusCatalog cat;
  cat.params = params;
  for (auto& [k, r] : merged) cat.records.push_back(std::move(r));
  std::sort(cat.records.begin(), cat.records.end(), record_less);
  cat.box_points = examined;

  const bool interrupted = std::any_of(todo.begin(), todo.end(), [&](std::size_t id) { return !done[id]; });
  if (truncated || interrupted) {
    if (!options.checkpoint_path.empty())
      save_checkpoint(options.checkpoint_path, params, done, cat.records);
    std::size_t finished = static_cast<std::size_t>(std::count(done.begin(), done.end(), 1));
    throw BudgetError(std::string(interrupted ? "census interrupted" : "census budget exceeded") + " after " +
                          std::to_string(finished) + " of " + std::to_string(slices.size()) + " slices (" +
                          std::to_string(cat.records.size()) + " fields so far)",
                      options.checkpoint_path);
  }

  std::ostringstream cert;
  cert << "Hunter bound T2 <= a^2/" << n << " + gamma_" << n - 1 << " (X/" << n << ")^(1/" << n - 1
       << ") with gamma_" << n - 1 << " = " << hermite_constant(n - 1)
       << "; translation-normalized 0 <= a_" << n - 1 << " <= " << n / 2 << "; |s_2| <= T2 bounds a_" << n - 2
       << "; |a_(n-k)| <= C(n,k)(T2/n)^(k/2) and |s_k| <= T2^(k/2); " << slices.size() << " slices, " << examined << " box points; ";
  if (n == 3 || n == 5)
    cert << "complete (every field of prime degree is primitive)";
  else
    cert << "complete for primitive fields; fields with a proper subfield may be missing";
  cat.completeness_certificate = cert.str();
  return cat;
}

std::string catalog_csv(const CensusCatalog& c) {
  std::string out = record_csv_header() + "\n";
  for (const auto& r : c.records) out += to_csv(r) + "\n";
  return out;
}

std::string catalog_sidecar_json(const CensusCatalog& c) {
  nlohmann::ordered_json j;
  j["params"] = params_json(c.params);
  j["fields"] = c.records.size();
  j["box_points"] = c.box_points;
  j["completeness_certificate"] = c.completeness_certificate;
  return j.dump(2);
}

NumberFieldRecord parse_record_csv(const std::string& line) {
  auto f = split_csv(line);
  if (f.size() != 6) throw ParseError("catalog row needs 6 fields", 1, 1);
  NumberFieldRecord r;
  try {
    r.degree = std::stoi(f[0]);
    r.field_disc = BigInt(f[1]);
  } catch (const std::exception&) {
    throw ParseError("bad degree or discriminant in catalog row", 1, 1);
  }
  r.defining_poly = parse_poly(f[3]);
  if (r.defining_poly.degree() != r.degree) throw ParseError("degree does not match polynomial", 1, 1);
  r.poly_disc = poly_disc(r.defining_poly);
  if (r.field_disc == 0 || r.poly_disc % r.field_disc != 0)
    throw ParseError("field discriminant does not divide the polynomial discriminant", 1, 1);
  BigInt q = r.poly_disc / r.field_disc;
  mpz_sqrt(r.index.get_mpz_t(), q.get_mpz_t());
  const Confidence conf = f[5] == "sampled" ? Confidence::Sampled : Confidence::Certified;
  if (r.degree == 1) {
    r.galois = GaloisLabel{1, 1, "C1", conf};
  } else {
    bool ok = false;
    for (const auto& g : transitive_groups())
      if (g.degree == r.degree && g.name == f[2]) {
        r.galois = GaloisLabel{g.degree, g.t, g.name, conf};
        ok = true;
      }
    if (!ok) throw ParseError("unknown Galois label " + f[2], 1, 1);
  }
  int r1 = 0, r2 = 0;
  if (std::sscanf(f[4].c_str(), "(%d,%d)", &r1, &r2) != 2) throw ParseError("bad signature", 1, 1);
  r.signature = {r1, r2};
  return r;
}

std::vector<NumberFieldRecord> parse_catalog_csv(const std::string& text) {
  std::vector<NumberFieldRecord> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != record_csv_header()) throw ParseError("missing catalog header", lineno, 1);
      header = true;
      continue;
    }
    try {
      out.push_back(parse_record_csv(line));
    } catch (const ParseError& e) {
      throw ParseError(std::string("catalog row: ") + e.what(), lineno, 1);
    }
  }
  if (!header) throw ParseError("missing catalog header", lineno, 1);
  return out;
}

std::vector<long long> default_checkpoints(long long X) {
  std::vector<long long> out;
  for (int i = 1;; ++i) {
    long long x = static_cast<long long>(std::floor(std::pow(10.0, i / 2.0) + 1e-9));
    if (x > X) break;
    out.push_back(x);
  }
  return out;
}

SlopeFit count_series(const std::vector<NumberFieldRecord>& records, long long max_disc,
                      const std::vector<long long>& checkpoints) {
  if (checkpoints.size() < 3) throw DomainError("count_series: at least 3 checkpoints required");
  std::vector<long long> xs = checkpoints;
  std::sort(xs.begin(), xs.end());
  if (xs.back() > max_disc) throw DomainError("count_series: checkpoint above the catalog bound");
  std::vector<BigInt> discs;
  for (const auto& r : records) discs.push_back(abs(r.field_disc));
  std::sort(discs.begin(), discs.end());
  SlopeFit fit;
  for (long long x : xs) {
    auto it = std::upper_bound(discs.begin(), discs.end(), BigInt(static_cast<long>(x)));
    fit.points.push_back({x, static_cast<long long>(it - discs.begin())});
  }
  const double top = static_cast<double>(xs.back());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& [x, c] : fit.points) {
    if (x < top / 10 * (1 - 1e-12) || c == 0) continue;
    double lx = std::log(static_cast<double>(x)), ly = std::log(static_cast<double>(c));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k < 2) throw DomainError("count_series: fewer than 2 non-empty checkpoints in the top decade");
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return fit;
}

std::vector<TowerRecord> build_s3_towers(const std::vector<NumberFieldRecord>& cubics, std::size_t limit,
                                         std::uint64_t seed) {
  std::vector<TowerRecord> out;
  for (const auto& K : cubics) {
    if (out.size() >= limit) break;
    if (K.degree != 3 || K.galois.name != "S3") continue;
    TowerRecord t;
    t.K = K;
    BigInt s = squarefree_part(K.field_disc);
    BigInt dM = (((s % 4) + 4) % 4 == 1) ? s : BigInt(4 * s);
    t.M = quadratic_record(dM.get_si());
    t.N = make_record(splitting_sextic(K.defining_poly), seed);
    const BigInt aK = abs(K.field_disc), aM = abs(t.M.field_disc), aN = abs(t.N.field_disc);
    BigInt m3 = aM * aM * aM;
    if (aN % m3 != 0)
      throw InvariantError("tower: |d_M|^3 does not divide |d_N| for " + to_string(K.defining_poly));
    t.relnorm = aN / m3;
    t.brauer_ok = brauer_check(aK, aM, aN, 3, 2);
    t.tower_ok = tower_check(aM, aN, 3, t.relnorm);
    if (!t.brauer_ok || !t.tower_ok)
      throw InvariantError("tower relation fails for " + to_string(K.defining_poly));
    out.push_back(std::move(t));
  }
  return out;
}

std::string tower_csv_header() { return "K_disc,M_disc,N_disc,relnorm,brauer,tower,K_poly,N_poly"; }

std::string to_csv(const TowerRecord& t) {
  return csv_row({t.K.field_disc.get_str(), t.M.field_disc.get_str(), t.N.field_disc.get_str(),
                  t.relnorm.get_str(), t.brauer_ok ? "ok" : "FAIL", t.tower_ok ? "ok" : "FAIL",
                  coeff_list(t.K.defining_poly), coeff_list(t.N.defining_poly)});
}

HasseReport hasse_crosscheck(long long X, const std::vector<NumberFieldRecord>& cubics) {
  HasseReport rep;
  rep.X = X;
  std::map<long long, long long> count;
  for (const auto& r : cubics)
    if (r.degree == 3 && r.field_disc < 0 && BigInt(abs(r.field_disc)) <= BigInt(static_cast<long>(X))) ++count[r.field_disc.get_si()];
  for (long long D : fundamental_discriminants(X)) {
    if (D > 0) continue;
    ++rep.discriminants;
    HasseRow row;
    row.D = D;
    row.cubic_fields = count.count(D) ? count[D] : 0;
    row.expected = (torsion_size(class_group(D), 3) - 1) / 2;
    rep.rows.push_back(row);
    if (row.cubic_fields != row.expected) rep.mismatches.push_back(row);
  }
  return rep;
}

}  // namespace malle
