#include "ifent/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ifent/codec.hpp"
#include "ifent/det.hpp"
#include "ifent/entropy.hpp"
#include "ifent/errors.hpp"
#include "ifent/io.hpp"
#include "ifent/linear.hpp"
#include "ifent/refine.hpp"

namespace ifent::cli {

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

std::string rate_decimal(const LogRate& r) {
  if (r.is_infinite()) return "inf";
  std::uint64_t num = 0, den = 1;
  if (r.dyadic(&num, &den)) {
    if (den == 1) return std::to_string(num);
    // dyadic rationals print exactly
    return decimal_string(double(num) / double(den));
  }
  return r.decimal_string();
}

std::string rate_fraction(const LogRate& r) {
  if (r.is_infinite()) return "inf";
  std::uint64_t num = 0, den = 1;
  if (r.dyadic(&num, &den))
    return std::to_string(num) + "/" + std::to_string(den);
  std::ostringstream os;
  os << "log2(" << r.radix() << ")/" << r.horizon() << "~"
     << r.decimal_string();
  return os.str();
}

struct EntropyArgs {
  std::string system_file;
  unsigned tau_max = 8;
  std::size_t max_elements = 8;
  std::uint64_t budget = 200000;
  bool heuristic = false;
  bool no_codec = false;
};

int run_entropy(const EntropyArgs& a, std::ostream& out) {
  const SystemModel m = load_system_file(a.system_file);
  EntropyLimits limits;
  limits.tau_max = a.tau_max;
  limits.covers.max_elements = a.max_elements;
  limits.covers.node_budget = a.budget;
  limits.covers.exact = !a.heuristic;
  limits.codec_refine = !a.no_codec;
  const auto res = invariance_entropy_ub(m.sys, m.Q, limits);
  for (const auto& row : res.best_report.per_tau)
    out << row.tau << "\t" << row.r << "\t" << row.rate.exact_string() << "\n";
  out << "h_inv_ub=" << rate_decimal(res.ub) << " exact="
      << (res.exact ? "true" : "false") << "\n";
  return kOk;
}

int run_det_entropy(const std::string& file, unsigned tau_max,
                    std::ostream& out) {
  const SystemModel m = load_system_file(file);
  const auto rep = h_det_bounds(m.sys, m.Q, tau_max);
  for (const auto& row : rep.per_tau) {
    out << row.tau << "\t";
    if (row.finite)
      out << row.r;
    else
      out << "inf";
    out << "\t" << row.rate.exact_string() << "\n";
  }
  out << "h_det_ub=" << rate_decimal(rep.ub) << " exact="
      << (rep.all_exact ? "true" : "false") << "\n";
  return kOk;
}

int run_datarate(const std::string& system_file, const std::string& ctrl_file,
                 unsigned tau_probe, std::ostream& out) {
  const SystemModel m = load_system_file(system_file);
  const PeriodicCoderController H = load_controller_file(m, ctrl_file);
  RateOptions opts;
  opts.require_admissible = false;
  opts.Q = &m.Q;
  const RateReport rate = transmission_rate(m.sys, H, opts);
  const TimeVaryingRate tv = time_varying_rate(m.sys, H, 4 * H.period);
  const ZeroErrorCapacity c0 = zero_error_capacity(m.sys, H, tau_probe);
  out << "R=" << rate_fraction(rate.rate) << " R_tv=" << rate_fraction(tv.limit)
      << " C0=";
  if (c0.growth == GrowthClass::polynomial && c0.certified)
    out << "0 (certified)";
  else if (c0.certified)
    out << c0.estimate.exact_string() << " (certified)";
  else
    out << c0.estimate.decimal_string() << " (estimate)";
  out << " admissible=" << (rate.admissible ? "true" : "false") << "\n";
  if (!rate.admissible && rate.counterexample)
    out << "counterexample: " << rate.counterexample->to_string() << "\n";
  return rate.admissible ? kOk : kViolation;
}

int run_synth_codec(const std::string& system_file,
                    const std::string& cover_file, unsigned tau,
                    const std::string& out_file, std::ostream& out) {
  const SystemModel m = load_system_file(system_file);
  InvariantCover cover;
  if (!cover_file.empty()) {
    cover = load_cover_file(m, cover_file);
  } else {
    cover = singleton_cover(m.sys, m.Q);
  }
  const auto check = check_invariant_cover(m.sys, m.Q, cover);
  if (!check.ok) {
    out << "invalid cover: " << check.message << "\n";
    return kViolation;
  }
  const auto rr = r_inv(m.sys, m.Q, cover, tau);
  const auto H = from_spanning(m.sys, m.Q, cover, rr.policy);
  RateOptions opts;
  opts.require_admissible = false;
  opts.Q = &m.Q;
  const auto rate = transmission_rate(m.sys, H, opts);
  out << "r_inv=" << rr.value << " N_rate=" << LogRate(rr.value, tau).exact_string()
      << " R=" << rate_fraction(rate.rate)
      << " admissible=" << (rate.admissible ? "true" : "false") << "\n";
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw LoadError("cannot write '" + out_file + "'");
    save_controller(m, H, f);
  }
  return kOk;
}

int run_bound_linear(unsigned n, const std::string& det, const std::string& muQ,
                     const std::string& muW, std::ostream& out) {
  LinearBoundInput in;
  in.n = n;
  in.abs_det_A = parse_rat(det);
  in.mu_Q = parse_rat(muQ);
  in.mu_W = parse_rat(muW);
  const auto lb = entropy_lower_bound(in);
  const auto st = static_rate_lower_bound(in);
  out << "h_lb=" << lb.to_string() << " static_lb=" << st.to_string() << "\n";
  return kOk;
}

int run_synth_scalar(const std::string& a, const std::string& w,
                     const std::string& q, const std::string& out_cover,
                     const std::string& out_abs, std::ostream& out) {
  const auto split = [](const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
      throw Error("expected two comma-separated rationals in '" + text + "'");
    return std::make_pair(parse_rat(text.substr(0, comma)),
                          parse_rat(text.substr(comma + 1)));
  };
  ScalarPlant plant;
  plant.a = parse_rat(a);
  std::tie(plant.w1, plant.w2) = split(w);
  std::tie(plant.q1, plant.q2) = split(q);
  const IntervalCover cover = synth_scalar_static(plant);
  const auto check = verify_scalar_cover(plant, cover);
  out << "m=" << cover.m << " d=" << rat_string(cover.d) << "\n";
  for (std::size_t i = 0; i < cover.cells.size(); ++i)
    out << "cell\t[" << rat_string(cover.cells[i].first) << ","
        << rat_string(cover.cells[i].second) << "]\tinput\t"
        << rat_string(cover.inputs[i]) << "\n";
  unsigned m_exp = 0;
  if (power_of_two_exponent(cover.m, &m_exp))
    out << "rate=" << m_exp << "\n";
  else
    out << "rate=log2(" << cover.m << ")~"
        << decimal_string(big_log2(cover.m)) << "\n";
  out << "verified=" << (check.ok ? "true" : "false") << "\n";
  if (!out_cover.empty()) {
    std::ofstream f(out_cover);
    if (!f) throw LoadError("cannot write '" + out_cover + "'");
    for (std::size_t i = 0; i < cover.cells.size(); ++i)
      f << rat_string(cover.cells[i].first) << "\t"
        << rat_string(cover.cells[i].second) << "\t"
        << rat_string(cover.inputs[i]) << "\n";
  }
  if (!out_abs.empty()) {
    const auto abs = abstract_scalar(plant, cover);
    SystemModel m;
    m.sys = abs.sys;
    m.Q = abs.Q;
    for (std::size_t i = 0; i < abs.sys.num_states - 1; ++i)
      m.state_names.push_back("c" + std::to_string(i));
    m.state_names.push_back("out");
    for (const auto& v : abs.input_values)
      m.input_names.push_back(rat_string(v));
    std::ofstream f(out_abs);
    if (!f) throw LoadError("cannot write '" + out_abs + "'");
    save_system(m, f);
  }
  return check.ok ? kOk : kViolation;
}

int run_frr_check(const std::string& file1, const std::string& file2,
                  const std::string& rel_file, std::ostream& out) {
  const SystemModel m1 = load_system_file(file1);
  const SystemModel m2 = load_system_file(file2);
  const RefinementRelation rel = load_relation_file(m1, m2, rel_file);
  const auto frr = check_frr(m1.sys, m2.sys, rel);
  const bool qc = check_q_compat(rel, m1.Q, m2.Q);
  out << "frr=" << (frr.ok ? "true" : "false")
      << " q_compat=" << (qc ? "true" : "false") << "\n";
  if (!frr.ok) out << frr.message << "\n";
  if (!qc) out << "Q1 is not the preimage of Q2\n";
  return frr.ok && qc ? kOk : kViolation;
}

int run_simulate(const std::string& system_file, const std::string& ctrl_file,
                 const std::string& x0, unsigned steps,
                 const std::string& adversary, std::uint64_t seed,
                 std::ostream& out) {
  const SystemModel m = load_system_file(system_file);
  const PeriodicCoderController H = load_controller_file(m, ctrl_file);
  Adversary adv = Adversary::minimal_id();
  if (adversary == "uniform") {
    adv = Adversary::seeded_uniform(seed);
  } else if (adversary.rfind("script:", 0) == 0) {
    std::vector<std::size_t> choices;
    std::stringstream ss(adversary.substr(7));
    std::string tok;
    while (std::getline(ss, tok, ',')) choices.push_back(std::stoul(tok));
    adv = Adversary::script(std::move(choices));
  } else if (adversary != "minid") {
    throw Error("unknown adversary '" + adversary + "'");
  }
  const auto trace = simulate(m.sys, H, m.state_id(x0), steps, adv);
  out << "t\tstate\tsymbol\tinput\n";
  for (std::size_t t = 0; t < trace.trajectory.states.size(); ++t) {
    out << t << "\t" << m.state_name(trace.trajectory.states[t]);
    if (t < trace.symbols.size())
      out << "\t" << trace.symbols[t] << "\t"
          << m.input_name(trace.trajectory.inputs[t]);
    else
      out << "\t-\t-";
    out << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"invariance feedback entropy and data-rate toolkit"};
  app.require_subcommand(1);

  // system check
  auto* sys_cmd = app.add_subcommand("system", "system file utilities");
  sys_cmd->require_subcommand(1);
  auto* sys_check = sys_cmd->add_subcommand("check", "validate a system file");
  std::string check_file;
  sys_check->add_option("file", check_file)->required();

  // entropy
  EntropyArgs ea;
  auto* entropy_cmd =
      app.add_subcommand("entropy", "invariance feedback entropy upper bound");
  entropy_cmd->add_option("file", ea.system_file)->required();
  entropy_cmd->add_option("--tau-max", ea.tau_max);
  entropy_cmd->add_option("--max-elements", ea.max_elements);
  entropy_cmd->add_option("--budget", ea.budget);
  entropy_cmd->add_flag("--heuristic", ea.heuristic);
  entropy_cmd->add_flag("--no-codec", ea.no_codec);

  // det entropy
  auto* det_cmd = app.add_subcommand("det", "deterministic-system analyses");
  det_cmd->require_subcommand(1);
  auto* det_entropy =
      det_cmd->add_subcommand("entropy", "deterministic invariance entropy");
  std::string det_file;
  unsigned det_tau_max = 8;
  det_entropy->add_option("file", det_file)->required();
  det_entropy->add_option("--tau-max", det_tau_max);

  // datarate
  auto* rate_cmd = app.add_subcommand("datarate", "coder-controller data rates");
  std::string rate_sys, rate_ctrl;
  unsigned rate_probe = 12;
  rate_cmd->add_option("system", rate_sys)->required();
  rate_cmd->add_option("controller", rate_ctrl)->required();
  rate_cmd->add_option("--tau-probe", rate_probe);

  // synth codec | synth scalar
  auto* synth_cmd = app.add_subcommand("synth", "synthesis");
  synth_cmd->require_subcommand(1);
  auto* synth_codec = synth_cmd->add_subcommand(
      "codec", "coder-controller from a cover's optimal spanning policy");
  std::string sc_sys, sc_cover, sc_out;
  unsigned sc_tau = 2;
  synth_codec->add_option("system", sc_sys)->required();
  synth_codec->add_option("--cover", sc_cover);
  synth_codec->add_option("--tau", sc_tau);
  synth_codec->add_option("--out", sc_out);
  auto* synth_scalar =
      synth_cmd->add_subcommand("scalar", "static quantizer for a scalar plant");
  std::string ss_a, ss_w, ss_q, ss_out_cover, ss_out_abs;
  synth_scalar->add_option("--a", ss_a)->required();
  synth_scalar->add_option("--w", ss_w)->required();
  synth_scalar->add_option("--q", ss_q)->required();
  synth_scalar->add_option("--out-cover", ss_out_cover);
  synth_scalar->add_option("--out-abstraction", ss_out_abs);

  // bound linear
  auto* bound_cmd = app.add_subcommand("bound", "lower bounds");
  bound_cmd->require_subcommand(1);
  auto* bound_linear = bound_cmd->add_subcommand(
      "linear", "entropy and static-rate lower bounds for linear systems");
  unsigned bl_n = 1;
  std::string bl_det, bl_muQ, bl_muW;
  bound_linear->add_option("--n", bl_n)->required();
  bound_linear->add_option("--det", bl_det)->required();
  bound_linear->add_option("--muQ", bl_muQ)->required();
  bound_linear->add_option("--muW", bl_muW)->required();

  // frr check
  auto* frr_cmd = app.add_subcommand("frr", "feedback refinement relations");
  frr_cmd->require_subcommand(1);
  auto* frr_check = frr_cmd->add_subcommand("check", "validate a relation");
  std::string frr1, frr2, frr_rel;
  frr_check->add_option("system1", frr1)->required();
  frr_check->add_option("system2", frr2)->required();
  frr_check->add_option("relation", frr_rel)->required();

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "closed-loop simulation");
  std::string sim_sys, sim_ctrl, sim_x0, sim_adv = "minid";
  unsigned sim_steps = 10;
  std::uint64_t sim_seed = 0;
  sim_cmd->add_option("system", sim_sys)->required();
  sim_cmd->add_option("controller", sim_ctrl)->required();
  sim_cmd->add_option("--x0", sim_x0)->required();
  sim_cmd->add_option("--steps", sim_steps);
  sim_cmd->add_option("--adversary", sim_adv);
  sim_cmd->add_option("--seed", sim_seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (sys_check->parsed()) {
      const SystemModel m = load_system_file(check_file);
      const auto rep = validate_system(m.sys);
      out << (rep.valid() ? "valid" : rep.to_string()) << "\n";
      return rep.valid() ? kOk : kViolation;
    }
    if (entropy_cmd->parsed()) return run_entropy(ea, out);
    if (det_entropy->parsed()) return run_det_entropy(det_file, det_tau_max, out);
    if (rate_cmd->parsed())
      return run_datarate(rate_sys, rate_ctrl, rate_probe, out);
    if (synth_codec->parsed())
      return run_synth_codec(sc_sys, sc_cover, sc_tau, sc_out, out);
    if (synth_scalar->parsed())
      return run_synth_scalar(ss_a, ss_w, ss_q, ss_out_cover, ss_out_abs, out);
    if (bound_linear->parsed())
      return run_bound_linear(bl_n, bl_det, bl_muQ, bl_muW, out);
    if (frr_check->parsed()) return run_frr_check(frr1, frr2, frr_rel, out);
    if (sim_cmd->parsed())
      return run_simulate(sim_sys, sim_ctrl, sim_x0, sim_steps, sim_adv,
                          sim_seed, out);
  } catch (const LoadError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const NotAdmissible& e) {
    err << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "no subcommand\n";
  return kInputError;
}

}  // namespace ifent::cli
