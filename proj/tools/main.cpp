#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecfuzz/adaptive.hpp"
#include "ecfuzz/curve.hpp"
#include "ecfuzz/field.hpp"
#include "ecfuzz/fuzzy.hpp"
#include "ecfuzz/io.hpp"
#include "ecfuzz/recoding.hpp"
#include "ecfuzz/scalarmul.hpp"

namespace {

using namespace ecfuzz;

std::string hex(const Int& v) {
  if (v < 0) return "-0x" + Int(-v).get_str(16);
  return "0x" + v.get_str(16);
}

std::string point_str(const CurvePoint& p) {
  if (p.is_infinity()) return "infinity";
  return "(" + hex(p.x().value()) + ", " + hex(p.y().value()) + ")";
}

// Routes CSV output to --out when given, stdout otherwise.
class OutSink {
 public:
  explicit OutSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::pair<CurvePoint, CostReport> run_strategy(const std::string& strategy, const Int& k,
                                               const CurvePoint& p, const CurveParams& e,
                                               unsigned psize, Chain* chain = nullptr) {
  if (strategy == "binary") return mul_double_add(k, p, e, chain);
  if (strategy == "runs") return mul_runs(k, p, e, chain);
  if (strategy == "window") return mul_window(k, p, psize, e, chain);
  if (strategy == "ones-complement") return mul_signed_window(k, p, psize, e, chain);
  throw ParseError("unknown strategy: " + strategy);
}

Int random_scalar(std::mt19937_64& rng, std::size_t bits) {
  Int v = 0;
  for (std::size_t got = 0; got < bits; got += 64) {
    v <<= 64;
    v |= Int(static_cast<unsigned long>(rng()));
  }
  v &= (Int(1) << bits) - 1;
  if (v == 0) v = 1;
  return v;
}

std::string ms_str(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms;
  return out.str();
}

struct MulArgs {
  std::string curve_path;
  std::string k_text;
  std::string strategy = "window";
  unsigned psize = 4;
  bool chain = false;
  bool timing = false;
  std::uint64_t seed = 1;
  std::string out;
};

// Wall-clock rows for growing batches of key-wrap style operations:
// enc = 2 multiplications per scalar (ephemeral public + shared mask),
// dec = 1 multiplication per incoming point. Numbers are specific to this
// machine and run; they are emitted for shape, never for comparison.
void run_timing(const CurveFile& cf, const MulArgs& a) {
  std::cerr << "timing is wall-clock on this machine only; "
               "values are not comparable across machines or runs\n";
  OutSink sink(a.out);
  std::ostream& out = sink.stream();

  std::mt19937_64 rng(a.seed);
  const std::size_t bits = cf.curve.field().bit_length();
  const Int priv = random_scalar(rng, bits);
  const CurvePoint pub = mul_double_add(priv, *cf.base, cf.curve).first;

  write_csv_row(out, {"scalars", "enc_ms_binary", "dec_ms_binary", "total_ms_binary",
                      "enc_ms_" + a.strategy, "dec_ms_" + a.strategy,
                      "total_ms_" + a.strategy});

  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  for (std::size_t n : {100u, 300u, 500u, 700u, 800u}) {
    std::vector<Int> ks;
    ks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ks.push_back(random_scalar(rng, bits));

    std::vector<std::string> row{std::to_string(n)};
    for (const std::string& strat : {std::string("binary"), a.strategy}) {
      std::vector<CurvePoint> ephemerals;
      ephemerals.reserve(n);
      auto t0 = clock::now();
      for (const Int& k : ks) {
        ephemerals.push_back(run_strategy(strat, k, *cf.base, cf.curve, a.psize).first);
        run_strategy(strat, k, pub, cf.curve, a.psize);
      }
      double enc = ms_since(t0);
      t0 = clock::now();
      for (const CurvePoint& c : ephemerals) run_strategy(strat, priv, c, cf.curve, a.psize);
      double dec = ms_since(t0);
      row.push_back(ms_str(enc));
      row.push_back(ms_str(dec));
      row.push_back(ms_str(enc + dec));
    }
    write_csv_row(out, row);
  }
}

void cmd_mul(const MulArgs& a) {
  CurveFile cf = load_curve_file(a.curve_path);
  if (!cf.base) throw ParseError(a.curve_path + ": mul needs a base point (gx=, gy=)");
  Int k = parse_int(a.k_text);
  if (k < 0) throw ParseError("k must be non-negative");

  if (a.timing) {
    run_timing(cf, a);
    return;
  }

  std::cout << "curve: p=" << hex(cf.curve.field().modulus()) << " a=" << hex(cf.curve.a().value())
            << " b=" << hex(cf.curve.b().value()) << " (" << cf.curve.field().bit_length()
            << " bits)\n";
  std::cout << "base: " << point_str(*cf.base) << "\n";
  std::cout << "k: " << k.get_str() << " (" << hex(k) << ")\n";

  if (k == 0) {
    std::cout << "strategy: " << a.strategy << "\nresult: " << point_str(CurvePoint::infinity())
              << "\ndoublings: 0\nadditions: 0\n";
    return;
  }

  const bool windowed = a.strategy == "window" || a.strategy == "ones-complement";
  Chain chain;
  auto [point, cost] =
      run_strategy(a.strategy, k, *cf.base, cf.curve, a.psize, a.chain ? &chain : nullptr);

  std::cout << "strategy: " << cost.strategy;
  if (windowed) std::cout << " (psize " << a.psize << ")";
  std::cout << "\nresult: " << point_str(point) << "\n";
  std::cout << "doublings: " << cost.doublings << "\nadditions: " << cost.additions << "\n";
  if (windowed) {
    auto [table, build] = precompute_table(*cf.base, a.psize, cf.curve);
    std::cout << "table: " << table.entry_count() << " odd multiples (1P.."
              << ((1u << a.psize) - 1) << "P), build cost " << build.doublings << " doubling + "
              << build.additions << " additions\n";
  }
  if (a.chain) {
    std::cout << "chain:";
    for (const Int& m : chain) std::cout << ' ' << m.get_str() << 'P';
    std::cout << "\n";
  }
}

struct TableRow {
  unsigned psize = 0;
  std::size_t doublings = 0;
  std::size_t additions = 0;
  std::size_t precomp_tabulated = 0;
  std::size_t precomp_stored = 0;
  std::string note;
};

void emit_table(std::ostream& out, const std::vector<TableRow>& rows) {
  write_csv_row(out, {"psize", "doublings", "additions", "precomp_tabulated", "precomp_stored",
                      "note"});
  for (const TableRow& r : rows)
    write_csv_row(out, {std::to_string(r.psize), std::to_string(r.doublings),
                        std::to_string(r.additions), std::to_string(r.precomp_tabulated),
                        std::to_string(r.precomp_stored), r.note});
}

// Window-method cost table: the tabulated precomputation column follows the
// all-window-values convention (2^psize - 1) even though only the odd
// multiples are ever stored, so every row carries a note.
std::vector<TableRow> window_table_rows(const Int& k) {
  std::vector<TableRow> rows;
  for (unsigned psize = 2; psize <= 10; ++psize) {
    CostPrediction c = predict_cost(sliding_windows(k, psize));
    TableRow r;
    r.psize = psize;
    r.doublings = c.doublings;
    r.additions = c.additions;
    r.precomp_tabulated = c.nominal_precomp;
    r.precomp_stored = c.table_size;
    r.note = "tabulated counts all window values 1.." + std::to_string(c.nominal_precomp) +
             "; stored keeps the " + std::to_string(c.table_size) +
             " odd multiples beyond the base";
    rows.push_back(r);
  }
  return rows;
}

// Signed-recoding cost table. The doubling/addition columns follow the plain
// window scan (the convention the tabulated version uses); a note records
// when the signed execution's own counts differ. The tabulated precomputation
// column is reproduced verbatim, with notes where it disagrees with the
// 2^(psize-1) - 1 odd multiples actually stored.
std::vector<TableRow> signed_table_rows(const Int& k) {
  static const std::size_t tabulated[] = {1, 3, 7, 15, 31, 61, 127, 251, 501};
  std::vector<TableRow> rows;
  for (unsigned psize = 2; psize <= 10; ++psize) {
    CostPrediction plain = predict_cost(sliding_windows(k, psize));
    CostPrediction withSign = predict_cost(ones_complement_recode(k, psize));
    TableRow r;
    r.psize = psize;
    r.doublings = plain.doublings;
    r.additions = plain.additions;
    r.precomp_tabulated = tabulated[psize - 2];
    r.precomp_stored = plain.table_size;
    std::vector<std::string> notes;
    if (r.precomp_tabulated != r.precomp_stored)
      notes.push_back("tabulated " + std::to_string(r.precomp_tabulated) + " differs from the " +
                      std::to_string(r.precomp_stored) + " odd multiples stored");
    if (withSign.doublings != plain.doublings || withSign.additions != plain.additions)
      notes.push_back("signed execution takes " + std::to_string(withSign.doublings) +
                      " doublings, " + std::to_string(withSign.additions) + " additions");
    for (std::size_t i = 0; i < notes.size(); ++i)
      r.note += (i ? "; " : "") + notes[i];
    rows.push_back(r);
  }
  return rows;
}

void cmd_table(bool signed_table, const std::string& k_text, const std::string& out_path) {
  Int k = parse_int(k_text);
  if (k < 1) throw ParseError("table scalar must be >= 1");
  OutSink sink(out_path);
  emit_table(sink.stream(), signed_table ? signed_table_rows(k) : window_table_rows(k));
}

void cmd_modmul(const std::string& x_text, const std::string& y_text, const std::string& m_text,
                const std::string& t_text) {
  Int x = parse_int(x_text);
  Int y = parse_int(y_text);
  Int m = parse_int(m_text);
  if (y < 0) throw ParseError("Y must be non-negative");
  PrimeField field = make_field(m);
  std::optional<Int> t;
  if (!t_text.empty()) t = parse_int(t_text);

  ModMulTrace tr = fuzzy_modmul(field, x, y, t);

  std::cout << "X=" << x.get_str() << " Y=" << y.get_str() << " m=" << m.get_str()
            << " t=" << tr.multiplier_t.get_str() << (t ? "" : " (auto)") << "\n";
  for (const ModMulStep& s : tr.steps) {
    Int weight = Int(1) << s.bit_position;
    Int magnitude = abs(s.term) / weight;
    std::cout << "bit " << s.bit_position << ": " << s.bit << " -> " << (s.bit ? "+" : "-")
              << weight.get_str() << "*" << magnitude.get_str() << " = " << s.term.get_str()
              << "\n";
  }
  std::cout << "raw " << tr.raw_sum.get_str() << ", reduction steps "
            << tr.reduction_steps.get_str() << ", result " << tr.reduced.value().get_str()
            << "\n";
}

std::pair<InputAxis, double> parse_fix(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ParseError("--fix wants <axis>=<value>, got '" + text + "'");
  std::string axis = text.substr(0, eq);
  InputAxis a;
  if (axis == "storage" || axis == "storage_room")
    a = InputAxis::Storage;
  else if (axis == "pre" || axis == "precomputing" || axis == "pre_computing")
    a = InputAxis::PreComputing;
  else if (axis == "doubling")
    a = InputAxis::Doubling;
  else
    throw ParseError("--fix axis must be storage|precomputing|doubling, got '" + axis + "'");
  double v;
  std::istringstream vs(text.substr(eq + 1));
  if (!(vs >> v) || !vs.eof()) throw ParseError("bad --fix value in '" + text + "'");
  if (v < 0.0 || v > 1.0) throw ParseError("--fix value must lie in [0,1]");
  return {a, v};
}

void cmd_surface(const std::string& rules_spec, const std::string& fix_text, unsigned resolution,
                 const std::string& out_path) {
  RuleBase rb = load_rule_base(rules_spec);
  std::optional<std::pair<InputAxis, double>> fixed;
  if (!fix_text.empty()) fixed = parse_fix(fix_text);

  SurfaceGrid grid = surface_grid(rb, fixed, resolution);
  std::cerr << "rules " << rb.name << ", fixed " << to_string(grid.fixed_axis) << "="
            << format_double(grid.fixed_value) << ", resolution " << grid.resolution << "\n";

  OutSink sink(out_path);
  std::ostream& out = sink.stream();
  write_csv_row(out, {to_string(grid.axis_a), to_string(grid.axis_b), "crisp"});
  for (const SurfacePoint& p : grid.points)
    write_csv_row(out, {format_double(p.a), format_double(p.b), format_double(p.crisp)});
}

struct SimulateArgs {
  std::string curve_path;
  std::string workload_path;
  std::size_t capacity = 1 << 20;
  double alpha = 0.2;
  std::string rules_spec = "full26";
  unsigned initial_psize = 4;
  bool no_adapt = false;
  std::string out;
};

void cmd_simulate(const SimulateArgs& a) {
  CurveFile cf = load_curve_file(a.curve_path);
  if (!cf.base) throw ParseError(a.curve_path + ": simulate needs a base point (gx=, gy=)");
  std::vector<Int> workload = load_workload(a.workload_path);
  RuleBase rb = load_rule_base(a.rules_spec);

  AdaptiveConfig cfg;
  cfg.storage_capacity = a.capacity;
  cfg.ema_alpha = a.alpha;
  cfg.initial_psize = a.initial_psize;
  cfg.controller_enabled = !a.no_adapt;

  AdaptiveSession session(cf.curve, *cf.base, rb, cfg);
  AdaptiveReport rep = session.run(workload);

  OutSink sink(a.out);
  std::ostream& out = sink.stream();
  write_csv_row(out, {"step", "k", "psize", "rebuilt", "mul_doublings", "mul_additions",
                      "table_doublings", "table_additions", "table_bytes", "storage_room",
                      "precomputing", "doubling", "crisp", "action"});
  for (std::size_t i = 0; i < rep.steps.size(); ++i) {
    const StepRecord& s = rep.steps[i];
    write_csv_row(out,
                  {std::to_string(i), s.k.get_str(), std::to_string(s.psize),
                   s.rebuilt ? "1" : "0", std::to_string(s.mul_cost.doublings),
                   std::to_string(s.mul_cost.additions), std::to_string(s.table_cost.doublings),
                   std::to_string(s.table_cost.additions), std::to_string(s.table_bytes),
                   format_double(s.inputs.storage_room), format_double(s.inputs.pre_computing),
                   format_double(s.inputs.doubling), format_double(s.decision.crisp),
                   to_string(s.decision.action)});
  }

  std::cerr << "steps: " << rep.steps.size() << "\n"
            << "rebuilds: " << rep.rebuilds << "\n"
            << "mul cost: " << rep.total_doublings << " doublings, " << rep.total_additions
            << " additions\n"
            << "table cost: " << rep.total_table_doublings << " doublings, "
            << rep.total_table_additions << " additions\n"
            << "final psize: " << session.state().current_psize << "\n"
            << "table bytes: " << session.state().table_bytes_used << " / "
            << session.state().storage_capacity << "\n";
}

void cmd_ecdh(const std::string& curve_path, std::uint64_t seed, const std::string& strategy,
              unsigned psize) {
  CurveFile cf = load_curve_file(curve_path);
  if (!cf.base)
    throw ParseError(curve_path + ": key exchange needs a base point (gx=, gy=)");

  std::mt19937_64 rng(seed);
  const std::size_t bits = cf.curve.field().bit_length();
  Int ka = random_scalar(rng, bits);
  Int kb = random_scalar(rng, bits);

  auto [pa, ca] = run_strategy(strategy, ka, *cf.base, cf.curve, psize);
  auto [pb, cb] = run_strategy(strategy, kb, *cf.base, cf.curve, psize);
  auto [sa, csa] = run_strategy(strategy, ka, pb, cf.curve, psize);
  auto [sb, csb] = run_strategy(strategy, kb, pa, cf.curve, psize);
  if (sa != sb) throw std::logic_error("key exchange: shared points disagree");

  const bool windowed = strategy == "window" || strategy == "ones-complement";
  std::cout << "curve: p=" << hex(cf.curve.field().modulus()) << " (" << bits << " bits)\n"
            << "base: " << point_str(*cf.base) << "\n"
            << "strategy: " << strategy;
  if (windowed) std::cout << " (psize " << psize << ")";
  std::cout << "\nseed: " << seed << "\n"
            << "alice private: " << hex(ka) << "\n"
            << "bob private:   " << hex(kb) << "\n"
            << "alice public:  " << point_str(pa) << "  cost " << ca.doublings << "D+"
            << ca.additions << "A\n"
            << "bob public:    " << point_str(pb) << "  cost " << cb.doublings << "D+"
            << cb.additions << "A\n"
            << "alice shared:  " << point_str(sa) << "  cost " << csa.doublings << "D+"
            << csa.additions << "A\n"
            << "bob shared:    " << point_str(sb) << "  cost " << csb.doublings << "D+"
            << csb.additions << "A\n"
            << "shared x: " << (sa.is_infinity() ? "infinity" : hex(sa.x().value()))
            << " (match)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic-curve scalar multiplication with windowed recodings and a fuzzy "
               "window-size controller"};
  app.require_subcommand(1);

  MulArgs mul;
  CLI::App* mul_cmd = app.add_subcommand("mul", "multiply the curve's base point by a scalar");
  mul_cmd->add_option("--curve", mul.curve_path, "curve file (p= a= b= gx= gy=)")->required();
  mul_cmd->add_option("--k", mul.k_text, "scalar, decimal or 0x hex")->required();
  mul_cmd->add_option("--strategy", mul.strategy, "binary|runs|window|ones-complement")
      ->check(CLI::IsMember({"binary", "runs", "window", "ones-complement"}));
  mul_cmd->add_option("--psize", mul.psize, "window width for windowed strategies")
      ->check(CLI::Range(2u, 12u));
  mul_cmd->add_flag("--chain", mul.chain, "print the accumulator's multiples");
  mul_cmd->add_flag("--timing", mul.timing, "emit wall-clock batch timing CSV instead");
  mul_cmd->add_option("--seed", mul.seed, "RNG seed for --timing batches");
  mul_cmd->add_option("--out", mul.out, "write --timing CSV here instead of stdout");
  mul_cmd->callback([&] { cmd_mul(mul); });

  std::string t2_k = "763", t2_out;
  CLI::App* t2_cmd = app.add_subcommand("table2", "window-method cost table (CSV)");
  t2_cmd->add_option("--k", t2_k, "scalar the doubling/addition columns count for");
  t2_cmd->add_option("--out", t2_out, "write CSV here instead of stdout");
  t2_cmd->callback([&] { cmd_table(false, t2_k, t2_out); });

  std::string t3_k = "763", t3_out;
  CLI::App* t3_cmd = app.add_subcommand("table3", "signed-recoding cost table (CSV)");
  t3_cmd->add_option("--k", t3_k, "scalar the doubling/addition columns count for");
  t3_cmd->add_option("--out", t3_out, "write CSV here instead of stdout");
  t3_cmd->callback([&] { cmd_table(true, t3_k, t3_out); });

  std::string mm_x, mm_y, mm_m, mm_t;
  CLI::App* mm_cmd =
      app.add_subcommand("modmul", "repeated-subtraction modular multiplication trace");
  mm_cmd->add_option("X", mm_x, "left factor")->required();
  mm_cmd->add_option("Y", mm_y, "right factor (its bits drive the scan)")->required();
  mm_cmd->add_option("M", mm_m, "prime modulus")->required();
  mm_cmd->add_option("--t", mm_t, "subtraction multiplier (default: auto-chosen)");
  mm_cmd->callback([&] { cmd_modmul(mm_x, mm_y, mm_m, mm_t); });

  std::string sf_rules = "full26", sf_fix, sf_out;
  unsigned sf_res = 51;
  CLI::App* sf_cmd = app.add_subcommand("surface", "controller output surface (CSV)");
  sf_cmd->add_option("--rules", sf_rules, "full26 | dominant9 | rule file path");
  sf_cmd->add_option("--fix", sf_fix, "held input, e.g. storage=0.4 (default doubling=0.5)");
  sf_cmd->add_option("--resolution", sf_res, "grid points per axis")->check(CLI::Range(2u, 2001u));
  sf_cmd->add_option("--out", sf_out, "write CSV here instead of stdout");
  sf_cmd->callback([&] { cmd_surface(sf_rules, sf_fix, sf_res, sf_out); });

  SimulateArgs sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "adaptive window-size loop over a scalar workload");
  sim_cmd->add_option("--curve", sim.curve_path, "curve file with base point")->required();
  sim_cmd->add_option("--workload", sim.workload_path, "file with one scalar per line")
      ->required();
  sim_cmd->add_option("--capacity", sim.capacity, "table storage budget in bytes");
  sim_cmd->add_option("--alpha", sim.alpha, "EMA smoothing factor in (0,1]");
  sim_cmd->add_option("--rules", sim.rules_spec, "full26 | dominant9 | rule file path");
  sim_cmd->add_option("--initial-psize", sim.initial_psize, "starting window width")
      ->check(CLI::Range(2u, 12u));
  sim_cmd->add_flag("--no-adapt", sim.no_adapt, "hold psize fixed (controller off)");
  sim_cmd->add_option("--out", sim.out, "write trajectory CSV here instead of stdout");
  sim_cmd->callback([&] { cmd_simulate(sim); });

  std::string kx_curve, kx_strategy = "window";
  std::uint64_t kx_seed = 1;
  unsigned kx_psize = 4;
  CLI::App* kx_cmd = app.add_subcommand("ecdh", "two-party key exchange demo");
  kx_cmd->add_option("--curve", kx_curve, "curve file with base point")->required();
  kx_cmd->add_option("--seed", kx_seed, "deterministic RNG seed for the private scalars");
  kx_cmd->add_option("--strategy", kx_strategy, "binary|runs|window|ones-complement")
      ->check(CLI::IsMember({"binary", "runs", "window", "ones-complement"}));
  kx_cmd->add_option("--psize", kx_psize, "window width for windowed strategies")
      ->check(CLI::Range(2u, 12u));
  kx_cmd->callback([&] { cmd_ecdh(kx_curve, kx_seed, kx_strategy, kx_psize); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
