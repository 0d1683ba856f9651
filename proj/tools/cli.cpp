#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "malle/bounds.hpp"
#include "malle/census.hpp"
#include "malle/descriptor.hpp"
#include "malle/error.hpp"
#include "malle/groupstruct.hpp"
#include "malle/malleinv.hpp"
#include "malle/quadclass.hpp"
#include "malle/report.hpp"
#include "malle/table.hpp"

namespace malle::cli {

std::atomic<bool>& stop_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

namespace {

namespace fs = std::filesystem;

/// Ordered key=value lines; the hash input for the output header. Only
/// settings that change the artifact belong here (no paths, workers, budget).
class Canon {
 public:
  explicit Canon(std::string command) { add("command", std::move(command)); }
  Canon& add(const std::string& key, const std::string& value) {
    text_ += key + "=" + value + "\n";
    return *this;
  }
  template <class T>
  Canon& num(const std::string& key, T value) {
    return add(key, std::to_string(value));
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
  if (!f) throw DomainError("write failed for " + path);
}

std::string resolve(const std::string& path) {
  return path.empty() ? path : fs::absolute(path).lexically_normal().string();
}

/// Writes header + body to `path`, or to `out` when no path is given.
void emit(const std::string& path, const Canon& canon, std::uint64_t seed, const std::string& body,
          std::ostream& out) {
  std::string text = output_header(canon.text(), seed) + "\n" + body;
  if (!text.empty() && text.back() != '\n') text += '\n';
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

std::string sidecar_path(const std::string& csv) {
  fs::path p(csv);
  if (p.extension() == ".csv") return p.replace_extension(".json").string();
  return csv + ".json";
}

std::string decimal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::vector<long long> parse_checkpoints(const std::string& text, long long X) {
  if (text == "auto") return default_checkpoints(X);
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  int col = 1;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad checkpoint '" + item + "'", 1, col);
    }
    col += static_cast<int>(item.size()) + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<long long, std::size_t>> counts_at(const std::vector<NumberFieldRecord>& recs,
                                                         const std::vector<long long>& cps) {
  std::vector<std::pair<long long, std::size_t>> out;
  for (long long X : cps) {
    const BigInt bx(std::to_string(X));
    std::size_t n = 0;
    for (const auto& r : recs) n += abs(r.field_disc) <= bx;
    out.emplace_back(X, n);
  }
  return out;
}

struct Settings {
  std::uint64_t seed = 0;

  std::string descriptor;
  bool json = false;

  std::string degree_choice = "kernel";
  bool assume_l_torsion = false;
  std::string registry;
  bool trace = false;
  std::string special;
  std::string base = "Q";

  bool csv = false;

  int degree = 3;
  std::vector<std::string> labels;
  long long max_disc = 0;
  std::string out;
  std::string checkpoints = "auto";
  unsigned workers = 1;
  std::uint64_t budget = 0;
  std::string checkpoint;
  bool resume = false;
  int signature = -1;

  std::string catalog;
  std::string group;

  std::size_t count = 50;

  long long m = 3;

  std::string aH, D;
  long r = 0, R = 0;
};

int cmd_invariants(const Settings& s, std::ostream& out) {
  const PermGroup G = named_group(s.descriptor);
  const MalleExponent e = malle_a(G);
  Canon canon("invariants");
  canon.add("group", G.name()).num("json", s.json ? 1 : 0);
  std::string body;
  if (s.json) {
    nlohmann::ordered_json j;
    j["group"] = G.name();
    j["degree"] = e.degree;
    j["index"] = e.index;
    j["a"] = to_string(e.value);
    j["witness"] = e.witness.to_cycle_string();
    body = j.dump(2);
  } else {
    body = "group=" + G.name() + "\nd=" + std::to_string(e.degree) + "\nind=" + std::to_string(e.index) +
           "\na=" + to_string(e.value) + "\nwitness=" + e.witness.to_cycle_string();
  }
  emit("", canon, s.seed, body, out);
  return kOk;
}

int cmd_analyze(const Settings& s, std::ostream& out) {
  const PermGroup G = named_group(s.descriptor);
  Canon canon("analyze");
  canon.add("group", G.name());
  emit("", canon, s.seed, analysis_json(analyze_group(G)), out);
  return kOk;
}

int cmd_bound(const Settings& s, std::ostream& out) {
  BoundContext ctx;
  ctx.base = s.base;
  if (s.assume_l_torsion) {
    ctx.torsion.set_mode(TorsionMode::LTorsionConjecture);
    ctx.assume_malle_for_quotient = true;
  }
  Canon canon("bound");
  canon.add("base", s.base).num("assume_l_torsion", s.assume_l_torsion ? 1 : 0);
  if (!s.registry.empty()) {
    const std::string text = read_file(s.registry);
    load_registry_text(text, ctx.torsion, ctx.counts);
    canon.add("registry", config_hash(text));
  }
  canon.num("trace", s.trace ? 1 : 0);

  std::vector<std::pair<std::string, std::string>> rows;
  ExponentResult res;
  if (!s.special.empty()) {
    const SpecialCase c = parse_special_case(s.special);
    canon.add("special", to_string(c));
    res = special_degree_bound(c, ctx);
    rows.push_back({"case", to_string(c)});
  } else {
    if (s.descriptor.empty()) throw DomainError("bound: a group descriptor or --special is required");
    GroupDescriptor d = parse_descriptor(s.descriptor);
    d.action = GroupDescriptor::Action::Natural;
    const PermGroup G = named_group(to_string(d));
    const GroupAnalysis a = analyze_group(G);
    const bool kernel = s.degree_choice == "kernel";
    canon.add("group", G.name()).add("degree", s.degree_choice);
    res = theorem_bound(a, kernel ? DegreeChoice::Kernel : DegreeChoice::Regular, ctx);
    const std::size_t dd = kernel ? a.m : G.order();
    rows.push_back({"group", G.name()});
    rows.push_back({"d", std::to_string(dd)});
    std::string aval = "-";
    if (kernel && G.degree() == a.m) {
      aval = to_string(malle_a(G).value);
    } else if (!kernel) {
      aval = to_string(malle_a(regular_action(G)).value);
    }
    rows.push_back({"a(G,d)", aval});
  }
  rows.push_back({"A(G,d)", format_exponent(res)});
  rows.push_back({"branch", res.branch});
  for (const auto& f : res.flags) rows.push_back({"flag", f});

  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  std::string body;
  for (const auto& [k, v] : rows) body += k + std::string(w + 2 - k.size(), ' ') + v + "\n";
  if (s.trace) body += "trace:\n" + format_trace(res);
  emit("", canon, s.seed, body, out);
  return kOk;
}

int cmd_table(const Settings& s, std::ostream& out) {
  Canon canon("table");
  canon.num("csv", s.csv ? 1 : 0);
  const auto rows = run_table_example();
  emit(resolve(s.out), canon, s.seed, s.csv ? render_table_csv(rows) : render_table_text(rows), out);
  return kOk;
}

int cmd_census(const Settings& s, std::ostream& out, std::ostream& err) {
  CensusParams p;
  p.degree = s.degree;
  p.labels = s.labels;
  std::sort(p.labels.begin(), p.labels.end());
  p.max_disc = s.max_disc;
  if (s.signature >= 0) p.complex_pairs = s.signature;
  const std::vector<long long> cps = parse_checkpoints(s.checkpoints, s.max_disc);

  Canon canon("census");
  canon.num("degree", p.degree).num("max_disc", p.max_disc);
  std::string lab;
  for (const auto& l : p.labels) lab += (lab.empty() ? "" : ",") + l;
  canon.add("labels", lab).num("signature", s.signature);
  std::string cptext;
  for (long long c : cps) cptext += (cptext.empty() ? "" : ",") + std::to_string(c);
  canon.add("checkpoints", cptext).num("seed", s.seed);

  const std::string out_path = resolve(s.out);
  CensusCatalog cat;
  if (p.degree == 2) {
    if (!p.labels.empty() && p.labels != std::vector<std::string>{"C2"} &&
        p.labels != std::vector<std::string>{"2T1"})
      throw DomainError("census: quadratic fields are all C2");
    cat = enumerate_quadratic(p.max_disc);
    if (p.complex_pairs) {
      std::vector<NumberFieldRecord> keep;
      for (auto& r : cat.records)
        if (r.signature.r2 == *p.complex_pairs) keep.push_back(std::move(r));
      cat.records = std::move(keep);
    }
    cat.params = p;
  } else {
    CensusOptions o;
    o.workers = std::max(1u, s.workers);
    o.budget = s.budget;
    o.seed = s.seed;
    o.resume = s.resume;
    o.stop = &stop_flag();
    o.checkpoint_path = resolve(s.checkpoint);
    if (o.checkpoint_path.empty())
      o.checkpoint_path = out_path.empty() ? resolve("malle-census.ckpt.json") : out_path + ".ckpt.json";
    cat = enumerate_fields(p, o);
    if (s.resume && fs::exists(o.checkpoint_path)) fs::remove(o.checkpoint_path);
  }

  const std::string body = catalog_csv(cat);
  emit(out_path, canon, s.seed, body, out);
  if (!out_path.empty()) {
    nlohmann::ordered_json j;
    j["header"] = output_header(canon.text(), s.seed);
    auto side = nlohmann::ordered_json::parse(catalog_sidecar_json(cat));
    for (auto it = side.begin(); it != side.end(); ++it) j[it.key()] = it.value();
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (const auto& [X, n] : counts_at(cat.records, cps)) counts.push_back({X, n});
    j["counts"] = counts;
    write_file(sidecar_path(out_path), j.dump(2) + "\n");
    err << cat.records.size() << " fields written to " << out_path << "\n";
  }
  return kOk;
}

int cmd_slopes(const Settings& s, std::ostream& out) {
  const std::string text = read_file(s.catalog);
  const auto recs = parse_catalog_csv(text);
  long long X = s.max_disc;
  const std::string side = sidecar_path(s.catalog);
  if (X <= 0 && fs::exists(side)) {
    auto j = nlohmann::json::parse(read_file(side));
    X = j.at("params").at("max_disc").get<long long>();
  }
  if (X <= 0) throw DomainError("slopes: --max-disc is required when the catalog has no sidecar");
  const auto cps = parse_checkpoints(s.checkpoints, X);
  SlopeFit fit = count_series(recs, X, cps);

  Canon canon("slopes");
  canon.add("catalog", config_hash(text)).num("max_disc", X);
  std::string cptext;
  for (long long c : cps) cptext += (cptext.empty() ? "" : ",") + std::to_string(c);
  canon.add("checkpoints", cptext);

  std::string note;
  if (!s.group.empty()) {
    const PermGroup G = named_group(s.group);
    canon.add("group", G.name());
    fit.reference_a = malle_a(G).value;
    try {
      const GroupAnalysis a = analyze_group(G);
      if (a.m == G.degree())
        fit.reference_A = theorem_bound(a, DegreeChoice::Kernel).value;
      else if (G.order() == G.degree())
        fit.reference_A = theorem_bound(a, DegreeChoice::Regular).value;
    } catch (const DomainError& e) {
      note = e.what();
    }
  }

  std::string body = "X,count\n";
  for (const auto& [x, n] : fit.points) body += std::to_string(x) + "," + std::to_string(n) + "\n";
  body += "# slope=" + decimal(fit.slope) + " (least squares over the top decade)\n";
  if (fit.reference_a)
    body += "# reference a=" + to_string(*fit.reference_a) + " (" + to_decimal(*fit.reference_a, 6) + ")\n";
  if (fit.reference_A)
    body += "# reference A=" + to_string(*fit.reference_A) + " (" + to_decimal(*fit.reference_A, 6) + ")\n";
  if (!note.empty()) body += "# no upper-bound exponent: " + note + "\n";
  body += "# finite-X slopes approximate an asymptotic exponent\n";
  emit(resolve(s.out), canon, s.seed, body, out);
  return kOk;
}

int cmd_towers(const Settings& s, std::ostream& out) {
  if (s.count == 0) throw DomainError("towers: --count must be positive");
  CensusParams p;
  p.degree = 3;
  p.labels = {"S3"};
  p.max_disc = 256;
  CensusOptions o;
  o.workers = std::max(1u, s.workers);
  o.seed = s.seed;
  o.stop = &stop_flag();
  CensusCatalog cat = enumerate_fields(p, o);
  while (cat.records.size() < s.count) {
    p.max_disc *= 2;
    cat = enumerate_fields(p, o);
  }
  const auto towers = build_s3_towers(cat.records, s.count, s.seed);
  Canon canon("towers");
  canon.num("count", s.count).num("seed", s.seed);
  std::string body = tower_csv_header() + "\n";
  for (const auto& t : towers) body += to_csv(t) + "\n";
  emit(resolve(s.out), canon, s.seed, body, out);
  return kOk;
}

int cmd_class_torsion(const Settings& s, std::ostream& out) {
  Canon canon("class-torsion");
  canon.num("max_disc", s.max_disc).num("m", s.m);
  const auto rows = torsion_table(s.m, s.max_disc);
  const TorsionExtreme ext = empirical_torsion_exponent(s.m, s.max_disc);
  std::string body = "# max log|Cl[m]|/log|D| = " + decimal(ext.ratio) + " at D=" + std::to_string(ext.D) +
                     " (finite-X maximum; underestimates the limsup)\n";
  for (const auto& r : rows) body += r + "\n";
  emit(resolve(s.out), canon, s.seed, body, out);
  return kOk;
}

int cmd_limitations(const Settings& s, std::ostream& out) {
  const Rational aH = parse_rational(s.aH), D = parse_rational(s.D);
  const LimitationResult res = limitation_analysis(aH, D, s.r, s.R);
  Canon canon("limitations");
  canon.add("aH", to_string(aH)).add("D", to_string(D)).num("r", s.r).num("R", s.R);
  std::string body = "holds=" + std::string(res.holds ? "true" : "false") +
                     "\nexponent=" + to_string(res.exponent) + "\n";
  emit("", canon, s.seed, body, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Malle exponent and number field census toolkit", "malle-lab"};
  app.set_version_flag("--version", std::string("malle-lab ") + kToolVersion);
  app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--seed", s.seed, "Seed for sampled Galois labels")->capture_default_str();

  auto* inv = app.add_subcommand("invariants", "Print d, ind(G), a(G,d) and a witness");
  inv->add_option("group", s.descriptor, "Group descriptor")->required();
  inv->add_flag("--json", s.json, "Emit JSON");

  auto* ana = app.add_subcommand("analyze", "Structural analysis of a group as JSON");
  ana->add_option("group", s.descriptor, "Group descriptor")->required();

  auto* bnd = app.add_subcommand("bound", "Upper-bound exponent A(G,d)");
  bnd->add_option("group", s.descriptor, "Group descriptor");
  bnd->add_option("--degree", s.degree_choice, "kernel or regular")
      ->check(CLI::IsMember({"kernel", "regular"}))
      ->capture_default_str();
  bnd->add_flag("--assume-l-torsion", s.assume_l_torsion, "Take every torsion exponent to be 0");
  bnd->add_option("--registry", s.registry, "Registry file with extra D and a1 entries")
      ->check(CLI::ExistingFile);
  bnd->add_flag("--trace", s.trace, "Print the full derivation");
  bnd->add_option("--special", s.special, "Special degree case (A4_deg6, C3sq_C4_deg6, ...)");
  bnd->add_option("--base", s.base, "Base field tag")->capture_default_str();

  auto* tab = app.add_subcommand("table", "Recompute the example table");
  tab->add_flag("--csv", s.csv, "Emit CSV");
  tab->add_option("--out", s.out, "Output file");

  auto* cen = app.add_subcommand("census", "Enumerate number fields of bounded discriminant");
  cen->add_option("--degree", s.degree, "Field degree (2..6)")->check(CLI::Range(2, 6))->capture_default_str();
  cen->add_option("--labels", s.labels, "Galois labels to keep (names or nTk)")->delimiter(',');
  cen->add_option("--max-disc", s.max_disc, "Discriminant bound X")->required()->check(CLI::PositiveNumber);
  cen->add_option("--out", s.out, "Catalog CSV path (sidecar JSON next to it)");
  cen->add_option("--checkpoints", s.checkpoints, "auto or a comma list of X values")->capture_default_str();
  cen->add_option("--workers", s.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cen->add_option("--budget", s.budget, "Max coefficient-box points this run (0 = unlimited)");
  cen->add_option("--checkpoint", s.checkpoint, "Checkpoint file for interrupted runs");
  cen->add_flag("--resume", s.resume, "Resume from the checkpoint");
  cen->add_option("--signature", s.signature, "Keep only fields with this many complex pairs");

  auto* slo = app.add_subcommand("slopes", "Count series and log-log slope of a catalog");
  slo->add_option("catalog", s.catalog, "Catalog CSV")->required()->check(CLI::ExistingFile);
  slo->add_option("--group", s.group, "Group descriptor for reference exponents");
  slo->add_option("--max-disc", s.max_disc, "Discriminant bound (default: from the sidecar)");
  slo->add_option("--checkpoints", s.checkpoints, "auto or a comma list of X values")->capture_default_str();
  slo->add_option("--out", s.out, "Output file");

  auto* tow = app.add_subcommand("towers", "S3 towers K, M, N with discriminant relations");
  tow->add_option("--count", s.count, "Number of smallest cubic fields")->capture_default_str();
  tow->add_option("--workers", s.workers, "Worker threads")->check(CLI::PositiveNumber);
  tow->add_option("--out", s.out, "Output file");

  auto* ct = app.add_subcommand("class-torsion", "Class group torsion of imaginary quadratic fields");
  ct->add_option("--max-disc", s.max_disc, "Bound on |D|")->required()->check(CLI::Range(3LL, 10000000LL));
  ct->add_option("--m", s.m, "Torsion modulus")->check(CLI::PositiveNumber)->capture_default_str();
  ct->add_option("--out", s.out, "Output CSV");

  auto* lim = app.add_subcommand("limitations", "Check aH + D - r/R <= 0");
  lim->add_option("--aH", s.aH, "a(H, [M1:k])")->required();
  lim->add_option("--D", s.D, "Torsion exponent")->required();
  lim->add_option("--r", s.r, "Relative degree [N1:M1]")->required();
  lim->add_option("--R", s.R, "R-value")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "malle-lab " << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (inv->parsed()) return cmd_invariants(s, out);
    if (ana->parsed()) return cmd_analyze(s, out);
    if (bnd->parsed()) return cmd_bound(s, out);
    if (tab->parsed()) return cmd_table(s, out);
    if (cen->parsed()) return cmd_census(s, out, err);
    if (slo->parsed()) return cmd_slopes(s, out);
    if (tow->parsed()) return cmd_towers(s, out);
    if (ct->parsed()) return cmd_class_torsion(s, out);
    if (lim->parsed()) return cmd_limitations(s, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetError& e) {
    err << "stopped: " << e.what() << "\n";
    if (!e.checkpoint().empty())
      err << "hint: rerun the same command with --resume --checkpoint " << e.checkpoint() << "\n";
    return kCapacity;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << "\n";
    err << "hint: lower --max-disc or use a smaller group\n";
    return kCapacity;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kInvariant;
  } catch (const UnresolvedDependency& e) {
    err << "unresolved dependency: " << e.what() << "\n";
    return kInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvariant;
  }
  return kInvariant;
}

}  // namespace malle::cli
