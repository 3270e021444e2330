#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "raimi/correlation.hpp"
#include "raimi/error.hpp"
#include "raimi/geometric_partition.hpp"
#include "raimi/io.hpp"
#include "raimi/oracle.hpp"
#include "raimi/raimi_circle.hpp"
#include "raimi/torus.hpp"

namespace raimi::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

// Inline JSON if it looks like JSON, otherwise a path to a JSON file.
std::string json_or_file(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '[') return arg;
  return read_file(arg);
}

bool trace_requested(const RunConfig& cfg) {
  if (cfg.emit_trace) return true;
  const char* env = std::getenv("RAIMI_TRACE");
  return env != nullptr && std::string(env) == "1";
}

int need(const std::optional<int>& v, const char* name) {
  if (!v) throw InvalidInput(std::string("--") + name + " is required");
  return *v;
}

int cmd_partition(const RunConfig& cfg, std::ostream& out) {
  const auto p = build_partition(need(cfg.r, "r"), need(cfg.t, "t"), cfg.k);
  write_output(cfg.output, io::partition_to_json(p), out);
  return kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int r = need(cfg.r, "r");
  const auto cover = io::parse_cover(read_file(cfg.input));
  const bool trace = trace_requested(cfg);
  if (const auto* circle = std::get_if<CircleCover>(&cover)) {
    const auto cert = solve(r, *circle, cfg.k);
    const auto text = io::certificate_to_json(cert, trace);
    write_output(cfg.output, text, out);
    if (!cert.verified) {
      err << "certificate failed its own bounds; full trace follows\n"
          << io::certificate_to_json(cert, true);
      return kFailed;
    }
    return kOk;
  }
  const auto cert = solve_torus(r, std::get<TorusCover>(cover), cfg.k);
  write_output(cfg.output, io::certificate_to_json(cert, trace), out);
  if (!cert.verified) {
    err << "certificate failed its own bounds; full trace follows\n"
        << io::certificate_to_json(cert, true);
    return kFailed;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto cover = io::parse_cover(read_file(cfg.input));
  const auto cert = io::parse_certificate(read_file(cfg.cert));
  std::string why;
  if (const auto* circle = std::get_if<CircleCover>(&cover)) {
    const auto* c = std::get_if<RaimiCertificate>(&cert);
    if (!c) throw InvalidInput("torus certificate given for a circle cover");
    why = verify_explain(*c, *circle);
  } else {
    const auto* c = std::get_if<TorusCertificate>(&cert);
    if (!c) throw InvalidInput("circle certificate given for a torus cover");
    why = verify_torus_explain(*c, std::get<TorusCover>(cover));
  }
  if (!why.empty()) {
    err << "verification failed: " << why << "\n";
    return kFailed;
  }
  out << "verified\n";
  return kOk;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  const CircleSet e = io::parse_circle_set(json_or_file(cfg.e_set));
  const CircleSet f = io::parse_circle_set(json_or_file(cfg.f_set));
  write_output(cfg.output, io::profile_csv(build_profile(e, f)), out);
  return kOk;
}

void merge_into(oracle::OracleReport& into, const oracle::OracleReport& cross) {
  into.grid = cross.grid;
  into.mismatches.insert(into.mismatches.end(), cross.mismatches.begin(), cross.mismatches.end());
  if (!cross.note.empty()) into.note = cross.note;
  const bool cross_ok = cross.agreement || cross.note.rfind("skipped", 0) == 0;
  into.agreement = into.agreement && cross_ok;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const int r = need(cfg.r, "r");
  const auto cover = io::parse_cover(read_file(cfg.input));
  oracle::OracleReport rep;

  if (const auto* circle = std::get_if<CircleCover>(&cover)) {
    RaimiCertificate cert;
    if (!cfg.cert.empty()) {
      auto parsed = io::parse_certificate(read_file(cfg.cert));
      auto* c = std::get_if<RaimiCertificate>(&parsed);
      if (!c) throw InvalidInput("torus certificate given for a circle cover");
      if (c->partition.r != r) throw InvalidInput("--r does not match the certificate");
      cert = std::move(*c);
    } else {
      cert = solve(r, *circle, cfg.k);
    }
    rep = oracle::exhaustive_witness(cert.partition, *circle, &cert);
    merge_into(rep, oracle::cross_validate(cert, *circle));
  } else {
    const auto& torus = std::get<TorusCover>(cover);
    TorusCertificate cert;
    if (!cfg.cert.empty()) {
      auto parsed = io::parse_certificate(read_file(cfg.cert));
      auto* c = std::get_if<TorusCertificate>(&parsed);
      if (!c) throw InvalidInput("circle certificate given for a torus cover");
      if (c->circle.partition.r != r) throw InvalidInput("--r does not match the certificate");
      cert = std::move(*c);
    } else {
      cert = solve_torus(r, torus, cfg.k);
    }
    CircleCover reduced;
    reduced.sets = selector_partition(torus.sets, torus.t()).parts;
    rep = oracle::exhaustive_witness(cert.circle.partition, reduced, &cert.circle);
    const auto cross = oracle::cross_validate(cert, torus);
    rep.digest = cross.digest;
    merge_into(rep, cross);
  }
  write_output(cfg.output, io::report_to_json(rep), out);
  return rep.agreement ? kOk : kFailed;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "partition") return cmd_partition(cfg, out);
    if (cfg.command == "solve") return cmd_solve(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "profile") return cmd_profile(cfg, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out);
    err << "unknown command " << cfg.command << "\n";
    return kInvalidInput;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    if (!e.dump().empty()) err << e.dump() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificate-producing rotations for Raimi-type partitions of the circle and torus"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* partition = app.add_subcommand("partition", "Emit the geometric partition as JSON");
  partition->add_option("--r", cfg.r, "number of parts")->required();
  partition->add_option("--t", cfg.t, "cover size")->required();
  partition->add_option("--k", cfg.k, "ratio override (>= 2^(r+4) t + 2)");
  partition->add_option("--out", cfg.output, "output file (default stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "Build a certificate for a cover");
  solve_cmd->add_option("--input", cfg.input, "cover JSON")->required();
  solve_cmd->add_option("--r", cfg.r, "number of parts")->required();
  solve_cmd->add_option("--k", cfg.k, "ratio override");
  solve_cmd->add_option("--out", cfg.output, "certificate output (default stdout)");
  solve_cmd->add_flag("--trace", cfg.emit_trace, "include per-step masses (also RAIMI_TRACE=1)");

  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate against its cover");
  verify_cmd->add_option("--input", cfg.input, "cover JSON")->required();
  verify_cmd->add_option("--cert", cfg.cert, "certificate JSON")->required();

  auto* profile = app.add_subcommand("profile", "Emit f(theta) = |R_theta(F) ∩ E| at its breakpoints");
  profile->add_option("--E", cfg.e_set, "circle set: inline JSON or file")->required();
  profile->add_option("--F", cfg.f_set, "circle set: inline JSON or file")->required();
  profile->add_option("--out", cfg.output, "CSV output (default stdout)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force cross-check of a certificate");
  oracle_cmd->add_option("--input", cfg.input, "cover JSON")->required();
  oracle_cmd->add_option("--r", cfg.r, "number of parts")->required();
  oracle_cmd->add_option("--k", cfg.k, "ratio override when solving");
  oracle_cmd->add_option("--cert", cfg.cert, "certificate to check (default: solve first)");
  oracle_cmd->add_option("--out", cfg.output, "report output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return execute(cfg, out, err);
}

}  // namespace raimi::cli
