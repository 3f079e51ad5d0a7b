// Copyright 2026 The qctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qctl/analysis.hpp"
#include "qctl/densem.hpp"
#include "qctl/json_io.hpp"
#include "qctl/opsem.hpp"
#include "qctl/parser.hpp"
#include "qctl/synth.hpp"

namespace {

constexpr const char* kVersion = "qctl 0.1.0";

// Exit codes: 0 success / positive verdict, 1 negative verdict, 2 error.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qctl::Environment parse_env(const std::string& arg) {
  std::vector<qctl::VarName> names;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) names.push_back(item);
  return qctl::Environment(std::move(names));
}

qctl::StmtPtr load_stmt(const std::string& path) {
  try {
    return qctl::parse(read_file(path));
  } catch (const qctl::SyntaxError& e) {
    std::ostringstream msg;
    msg << path << ":" << e.line << ":" << e.column << ": " << e.what();
    if (!e.expected.empty()) {
      msg << " (expected ";
      for (size_t i = 0; i < e.expected.size(); ++i)
        msg << (i ? ", " : "") << e.expected[i];
      msg << ")";
    }
    throw std::runtime_error(msg.str());
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string amp_str(const qctl::Cplx& a) {
  return fmt(a.real()) + (a.imag() < 0 ? "-" : "+") + fmt(std::abs(a.imag())) +
         "i";
}

nlohmann::json state_json(const qctl::Vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back({v(i).real(), v(i).imag()});
  return out;
}

void print_matrix(const std::string& label, const qctl::Mat& m) {
  std::cout << label << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::cout << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      std::cout << (c ? "  " : "") << amp_str(m(r, c));
    std::cout << "\n";
  }
}

int cmd_parse(const std::string& file, bool json) {
  qctl::StmtPtr s = load_stmt(file);
  if (json) {
    nlohmann::json out{{"pretty", qctl::pretty(s)},
                       {"nodes", qctl::node_count(*s)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << qctl::pretty(s) << "\n";
  }
  return kOk;
}

int cmd_check(const std::string& file, const std::string& env_arg, bool trace) {
  qctl::StmtPtr s = load_stmt(file);
  qctl::Environment env = parse_env(env_arg);
  auto res = qctl::check(env, s);
  if (!res) {
    const auto& e = res.error();
    std::cout << "error at " << e.line << ":" << e.column << ": "
              << qctl::to_string(e) << "\n";
    return kNegative;
  }
  std::cout << "ok: output env = " << qctl::to_string(res.value()) << "\n";
  if (trace) std::cout << qctl::derivation(env, *s).value();
  return kOk;
}

int cmd_run(const std::string& file, const std::string& env_arg,
            const std::string& state_arg, int fuel, double prune_eps,
            bool json) {
  qctl::StmtPtr s = load_stmt(file);
  qctl::Environment env = parse_env(env_arg);
  qctl::Vec psi = qctl::parse_amplitudes(state_arg);
  qctl::Program prog = qctl::make_program(env, s);
  qctl::EvalOptions opts{fuel, prune_eps};
  qctl::OutputEnsemble ens = qctl::eval({s, psi, env}, opts);
  double n2 = psi.squaredNorm();
  double lower = ens.mass() / n2;
  double upper = lower + ens.truncated_mass / n2;
  if (json) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& v : ens.items)
      items.push_back({{"state", state_json(v.state)}, {"nu", v.default_bit}});
    nlohmann::json out{{"out_env", qctl::to_string(ens.out_env)},
                       {"items", items},
                       {"truncated_mass", ens.truncated_mass},
                       {"p_lower", lower},
                       {"p_upper", upper}};
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "output env: " << qctl::to_string(ens.out_env) << "\n";
  for (const auto& v : ens.items) {
    std::cout << "  (";
    for (Eigen::Index i = 0; i < v.state.size(); ++i)
      std::cout << (i ? "; " : "") << amp_str(v.state(i));
    std::cout << ", nu=" << v.default_bit << ")\n";
  }
  std::cout << "truncated_mass: " << fmt(ens.truncated_mass) << "\n";
  std::cout << "p in [" << fmt(lower) << ", " << fmt(upper) << "]\n";
  return kOk;
}

int cmd_denote(const std::string& file, const std::string& env_arg, double tol,
               int max_iter, bool json) {
  qctl::StmtPtr s = load_stmt(file);
  qctl::Program prog = qctl::make_program(parse_env(env_arg), s);
  qctl::LfpConfig cfg{tol, max_iter};
  qctl::DenoteResult res = qctl::denote(prog, cfg);
  bool valid = qctl::validate(res.v);
  if (json) {
    nlohmann::json out{{"in_env", qctl::to_string(res.v.in_env)},
                       {"out_env", qctl::to_string(res.v.out_env)},
                       {"C", qctl::matrix_to_json(res.v.C.m)},
                       {"F", qctl::matrix_to_json(res.v.F)},
                       {"residual", res.residual},
                       {"iterations", res.iterations},
                       {"converged", res.converged},
                       {"valid", valid}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "[[S]]_{" << qctl::to_string(res.v.in_env) << "} : "
              << qctl::to_string(res.v.in_env) << " -> "
              << qctl::to_string(res.v.out_env) << "\n";
    print_matrix("C (superoperator on column-major vec)", res.v.C.m);
    print_matrix("F", res.v.F);
    std::cout << "lfp residual: " << fmt(res.residual)
              << "  iterations: " << res.iterations
              << "  converged: " << (res.converged ? "yes" : "no") << "\n";
    std::cout << "valid (C,F) pair: " << (valid ? "yes" : "no") << "\n";
  }
  return res.converged ? kOk : kNegative;
}

int cmd_prob(const std::string& file, const std::string& env_arg,
             const std::string& state_arg, bool json) {
  qctl::StmtPtr s = load_stmt(file);
  qctl::Program prog = qctl::make_program(parse_env(env_arg), s);
  qctl::Vec psi = qctl::parse_amplitudes(state_arg);
  double p = qctl::probability_denotational(prog, psi);
  if (json)
    std::cout << nlohmann::json{{"p", p}}.dump(2) << "\n";
  else
    std::cout << "p = " << fmt(p) << "\n";
  return kOk;
}

int cmd_adequacy(const std::string& file, const std::string& env_arg,
                 const std::string& state_arg, int fuel, double tol,
                 bool json) {
  qctl::StmtPtr s = load_stmt(file);
  qctl::Program prog = qctl::make_program(parse_env(env_arg), s);
  qctl::Vec psi = qctl::parse_amplitudes(state_arg);
  qctl::AdequacyReport rep =
      qctl::check_adequacy(prog, psi, qctl::EvalOptions{fuel, 0.0}, tol);
  if (json) {
    nlohmann::json out{{"density_residual", rep.density_residual},
                       {"transform_residual", rep.transform_residual},
                       {"truncated_mass", rep.truncated_mass},
                       {"verdict", rep.verdict}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "density_residual: " << fmt(rep.density_residual)
              << "\ntransform_residual: " << fmt(rep.transform_residual)
              << "\ntruncated_mass: " << fmt(rep.truncated_mass)
              << "\nverdict: " << (rep.verdict ? "adequate" : "MISMATCH")
              << "\n";
  }
  return rep.verdict ? kOk : kNegative;
}

int cmd_equiv(const std::string& file1, const std::string& file2,
              const std::string& env_arg, double tol, bool json) {
  qctl::Environment env = parse_env(env_arg);
  qctl::Program p1 = qctl::make_program(env, load_stmt(file1));
  qctl::Program p2 = qctl::make_program(env, load_stmt(file2));
  qctl::EquivVerdict v = qctl::equivalent(p1, p2, tol);
  if (json) {
    nlohmann::json out{{"equivalent", v.equivalent}};
    if (v.witness) {
      out["witness_context"] = qctl::pretty(v.witness->ctx.stmt);
      out["witness_input"] = state_json(v.witness->prepared_input);
      out["p_gap"] = v.witness->p_gap;
    }
    std::cout << out.dump(2) << "\n";
  } else if (v.equivalent) {
    std::cout << "equivalent\n";
  } else {
    std::cout << "NOT equivalent\n";
    std::cout << "witness context:\n  " << qctl::pretty(v.witness->ctx.stmt)
              << "\n";
    std::cout << "termination-probability gap: " << fmt(v.witness->p_gap)
              << "\n";
  }
  return v.equivalent ? kOk : kNegative;
}

int cmd_synth(const std::string& kraus_file, const std::string& nu_arg,
              const std::string& env_in, const std::string& env_out,
              bool json) {
  nlohmann::json kj = nlohmann::json::parse(read_file(kraus_file));
  qctl::KrausSet ks;
  ks.ops = qctl::kraus_from_json(kj);
  qctl::Vec nus = qctl::parse_amplitudes(nu_arg);
  for (Eigen::Index i = 0; i < nus.size(); ++i)
    ks.vacuum_amps.push_back(nus(i));
  qctl::Environment in_env = parse_env(env_in);
  qctl::Environment out_env = parse_env(env_out);
  qctl::VacExt target = qctl::kraus_to_vacext(ks, in_env, out_env);
  qctl::Program prog = qctl::synthesize(target);
  if (json) {
    nlohmann::json out{{"in_env", qctl::to_string(prog.in_env)},
                       {"out_env", qctl::to_string(prog.out_env)},
                       {"program", qctl::pretty(prog.stmt)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << qctl::pretty(prog.stmt) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter and semantics toolkit for a quantum language "
               "with coherent control"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string file, file2, env_arg, out_env_arg, state_arg, nu_arg;
  int fuel = 64, max_iter = 2000;
  double tol = 1e-12, equiv_tol = 1e-9, adequacy_tol = 1e-6, prune_eps = 0.0;
  bool json = false, trace = false;
  int seed = 0;  // reserved for randomized subcommands

  auto* parse_cmd = app.add_subcommand("parse", "parse and pretty-print");
  parse_cmd->add_option("file", file)->required();
  parse_cmd->add_flag("--json", json);

  auto* check_cmd = app.add_subcommand("check", "well-formedness judgment");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--env", env_arg, "input environment, e.g. q,r");
  check_cmd->add_flag("--trace", trace, "print the derivation tree");

  auto* run_cmd = app.add_subcommand("run", "big-step output ensemble");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("--env", env_arg);
  run_cmd->add_option("--state", state_arg, "re,im;re,im;... in basis order")
      ->required();
  run_cmd->add_option("--fuel", fuel);
  run_cmd->add_option("--prune-eps", prune_eps);
  run_cmd->add_flag("--json", json);

  auto* denote_cmd = app.add_subcommand("denote", "denotation (C, F)");
  denote_cmd->add_option("file", file)->required();
  denote_cmd->add_option("--env", env_arg);
  denote_cmd->add_option("--tol", tol);
  denote_cmd->add_option("--max-iter", max_iter);
  denote_cmd->add_flag("--json", json);

  auto* prob_cmd = app.add_subcommand("prob", "denotational termination probability");
  prob_cmd->add_option("file", file)->required();
  prob_cmd->add_option("--env", env_arg);
  prob_cmd->add_option("--state", state_arg)->required();
  prob_cmd->add_flag("--json", json);

  auto* adequacy_cmd = app.add_subcommand("adequacy", "cross-check the semantics");
  adequacy_cmd->add_option("file", file)->required();
  adequacy_cmd->add_option("--env", env_arg);
  adequacy_cmd->add_option("--state", state_arg)->required();
  adequacy_cmd->add_option("--fuel", fuel);
  adequacy_cmd->add_option("--tol", adequacy_tol);
  adequacy_cmd->add_flag("--json", json);

  auto* equiv_cmd = app.add_subcommand("equiv", "observational equivalence");
  equiv_cmd->add_option("file1", file)->required();
  equiv_cmd->add_option("file2", file2)->required();
  equiv_cmd->add_option("--env", env_arg);
  equiv_cmd->add_option("--tol", equiv_tol);
  equiv_cmd->add_flag("--json", json);

  auto* synth_cmd = app.add_subcommand("synth", "program from a vacuum extension");
  synth_cmd->add_option("--kraus", file, "JSON list of Kraus matrices")
      ->required();
  synth_cmd->add_option("--nu", nu_arg, "vacuum amplitudes re,im;...")
      ->required();
  synth_cmd->add_option("--env-in", env_arg);
  synth_cmd->add_option("--env-out", out_env_arg);
  synth_cmd->add_option("--seed", seed);
  synth_cmd->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(file, json);
    if (check_cmd->parsed()) return cmd_check(file, env_arg, trace);
    if (run_cmd->parsed())
      return cmd_run(file, env_arg, state_arg, fuel, prune_eps, json);
    if (denote_cmd->parsed())
      return cmd_denote(file, env_arg, tol, max_iter, json);
    if (prob_cmd->parsed()) return cmd_prob(file, env_arg, state_arg, json);
    if (adequacy_cmd->parsed())
      return cmd_adequacy(file, env_arg, state_arg, fuel, adequacy_tol, json);
    if (equiv_cmd->parsed())
      return cmd_equiv(file, file2, env_arg, equiv_tol, json);
    if (synth_cmd->parsed())
      return cmd_synth(file, nu_arg, env_arg, out_env_arg, json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
