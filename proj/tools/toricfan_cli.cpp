// toricfan: command-line front end. Exit status 0 on success, 1 on a domain
// error (bad input data, failed checks), 2 on a usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "toric/batch.hpp"
#include "toric/birational.hpp"
#include "toric/certificate.hpp"
#include "toric/chern.hpp"
#include "toric/error.hpp"
#include "toric/io.hpp"
#include "toric/pipeline.hpp"
#include "toric/primitive.hpp"
#include "toric/report.hpp"

namespace {

using namespace toric;

constexpr int kOk = 0;
constexpr int kDomain = 1;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::precondition, "cannot write " + path);
  out << text;
}

std::size_t ray_by_name(const LatticeFan& f, const std::string& name) {
  if (auto i = f.find_label(name)) return *i;
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    if (f.name(i) == name) return i;
  throw Error(ErrorKind::index, "no ray named '" + name + "'");
}

RaySet rays_by_name(const LatticeFan& f, const std::vector<std::string>& names) {
  RaySet s;
  for (const auto& n : names) s = s.with(ray_by_name(f, n));
  return s;
}

RaySet centered_or_default(const LatticeFan& f, const std::vector<std::string>& names) {
  if (!names.empty()) return rays_by_name(f, names);
  const auto c = minimal_centered_collection(f);
  if (!c) throw Error(ErrorKind::precondition, "fan has no centered primitive collection");
  return *c;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_analyze(const std::string& path) {
  const LatticeFan f = read_fan_file(path);
  require_valid(f);
  std::cout << "dim " << f.rank() << ", rays " << f.ray_count() << ", picard rank " << f.picard_rank() << "\n";
  const auto rels = primitive_relations(f);
  bool fano = true;
  std::cout << "primitive relations (" << rels.size() << "):\n";
  for (const auto& r : rels) {
    fano = fano && r.degree > 0;
    std::cout << "  " << format_relation(f, r) << "   degree " << r.degree
              << (is_contractible(f, r) ? ", contractible" : "") << "\n";
  }
  std::cout << "fano: " << yes_no(fano) << "\n";
  std::cout << "projective: " << yes_no(is_projective(f)) << "\n";
  const auto centered = minimal_centered_collection(f);
  if (!centered) {
    std::cout << "m: none\n";
    return kOk;
  }
  std::cout << "m: " << centered->size() - 1 << " (centered " << f.names(*centered) << ")\n";
  std::cout << "opponents:\n";
  for (std::size_t v = 0; v < f.ray_count(); ++v) {
    const auto opp = opponents(f, v);
    if (opp.empty()) continue;
    std::cout << "  " << f.name(v) << ":";
    for (auto w : opp) std::cout << ' ' << f.name(w);
    std::cout << "\n";
  }
  const auto rpcs = relevant_collections(f, *centered);
  std::cout << "relevant relations (" << rpcs.size() << "):\n";
  for (const auto& rr : rpcs)
    std::cout << "  " << format_relation(f, rr.relation) << "   type " << rr.type << " (" << rr.shape << ")\n";
  const auto locus = bundle_locus(f, *centered);
  std::cout << "bundle locus codim: " << (locus.codim ? std::to_string(*locus.codim) : "none") << "\n";
  if (centered->size() == 3 || centered->size() == 4) {
    if (const auto exc = detect_exceptional(f, *centered)) {
      std::cout << "exceptional decomposition";
      if (exc->pattern) std::cout << " (pattern " << exc->pattern << ")";
      std::cout << ":\n";
      for (const auto& r : exc->relations) std::cout << "  " << format_relation(f, r) << "\n";
    } else {
      std::cout << "exceptional decomposition: none\n";
    }
  }
  return kOk;
}

int cmd_pipeline(const std::string& path, const std::vector<std::string>& centered_names,
                 const std::string& cert_path, const std::string& log_path, const std::string& out_path,
                 std::optional<std::size_t> exceptional_first, std::size_t cut_out) {
  const LatticeFan f = read_fan_file(path);
  const RaySet centered = centered_or_default(f, centered_names);
  PipelineOptions opts;
  opts.input_id = std::filesystem::path(path).filename().string();
  opts.exceptional_first = exceptional_first;
  const auto res = run_step1(f, centered, opts);
  std::cout << "centered:";
  for (const auto& x : res.log.centered) std::cout << ' ' << x;
  std::cout << "\nsteps (" << res.log.steps.size() << "):\n";
  for (const auto& s : res.log.steps) {
    std::cout << "  " << to_string(s.kind) << ":";
    for (std::size_t k = 0; k < s.relations.size(); ++k) std::cout << (k ? " | " : " ") << s.relations[k].text;
    std::cout << "   [parameter ray " << s.parameter_ray << "]\n";
  }
  std::cout << "output: " << res.output.ray_count() << " rays, fano " << yes_no(is_fano(res.output))
            << ", projective " << yes_no(res.output_projective) << "\n";
  std::cout << "verification: " << (res.verification.ok() ? "ok" : "failed") << "\n";
  const Certificate cert = build_certificate(res.log, 2, cut_out);
  const Verdict verdict = check_certificate(cert);
  std::cout << "certificate: ch2 . S0 = ";
  for (std::size_t i = 0; i < cert.twice_base.size(); ++i)
    std::cout << (i ? " + " : "") << "(" << format_half(cert.twice_base[i]) << ") a" << i;
  for (const auto& c : cert.corrections)
    std::cout << " - (" << format_half(c.twice_coefficient) << ") " << c.parameter;
  std::cout << "\nverdict: " << to_string(verdict) << "\n";
  if (!cert_path.empty()) write_text(cert_path, certificate_to_json(cert));
  if (!log_path.empty()) write_text(log_path, log_to_json(res.log));
  if (!out_path.empty()) write_fan_file(out_path, res.output);
  return verdict == Verdict::proven ? kOk : kDomain;
}

int cmd_screen(const std::string& path) {
  const LatticeFan f = read_fan_file(path);
  require_valid(f);
  const auto s = screen_2fano(f);
  for (const auto& [tau, v] : s.values) std::cout << "  V(" << f.names(tau) << "): " << v.get_str() << "\n";
  if (s.minimum) {
    std::cout << "minimum " << s.minimum->get_str() << " at V(" << f.names(*s.argmin) << ")\n";
    std::cout << (sgn(*s.minimum) <= 0 ? "not 2-Fano\n" : "inconclusive\n");
  }
  return kOk;
}

int cmd_reconstruct(const std::string& path, int dim, const std::string& out) {
  const auto p = read_relations_file(path);
  const LatticeFan f = reconstruct_fan(p, dim);
  write_text(out, emit_fan(f));
  if (!out.empty() && out != "-")
    std::cout << "reconstructed " << f.ray_count() << " rays, " << f.max_cones().size() << " max cones\n";
  return kOk;
}

int cmd_bundle(const std::vector<long>& a, const std::string& out) {
  write_text(out, emit_fan(build_bundle_over_p1(a)));
  return kOk;
}

int cmd_batch(const std::string& dir, const std::string& out, unsigned workers) {
  const auto res = batch_classify(std::filesystem::path(dir), workers);
  write_text(out, batch_csv(res));
  std::cout << histogram_text(res);
  std::size_t failed = 0;
  for (const auto& r : res.rows)
    if (!r.error.empty()) {
      ++failed;
      std::cerr << "unreadable: " << r.file << ": " << r.error << "\n";
    }
  return failed == 0 ? kOk : kDomain;
}

int cmd_check_cert(const std::string& path) {
  const Certificate c = certificate_from_json(slurp(path));
  const Verdict v = check_certificate(c);
  std::cout << to_string(v) << "\n";
  return v == Verdict::proven ? kOk : kDomain;
}

int cmd_diagnose_m3(const std::string& path, const std::vector<std::string>& centered_names) {
  const LatticeFan f = read_fan_file(path);
  require_valid(f);
  const RaySet centered = centered_or_default(f, centered_names);
  const auto rep = diagnose_m3(f, centered);
  std::cout << "centered " << f.names(centered) << "\n";
  std::cout << "relevant relations (" << rep.relevant.size() << "):\n";
  for (const auto& e : rep.relevant)
    std::cout << "  " << e.text << "   type " << e.relevant.type << " (" << e.relevant.shape << ")"
              << (e.contractible ? ", contractible" : ", not contractible") << (e.singular ? ", singular" : "") << "\n";
  std::cout << "auxiliary relations (" << rep.auxiliary.size() << "):\n";
  for (const auto& r : rep.auxiliary) std::cout << "  " << format_relation(f, r) << "\n";
  if (rep.exceptional) {
    std::cout << "exceptional decomposition (pattern " << rep.exceptional->pattern << "):\n";
    for (const auto& r : rep.exceptional->relations) std::cout << "  " << format_relation(f, r) << "\n";
  } else {
    std::cout << "exceptional decomposition: none\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive relations, birational surgery and 2-Fano screening for smooth toric fans"};
  app.require_subcommand(1);
  app.fallthrough();
  bool seedless = false;
  app.add_flag("--seedless", seedless, "Accepted for scripts; the tool never uses randomness");

  std::string fan_path, out_path, cert_path, log_path, rel_path, dir_path;
  std::vector<std::string> centered;
  std::vector<long> degrees;
  std::optional<std::size_t> exceptional_first;
  std::size_t cut_out = 2;
  int dim = 0;
  unsigned workers = 0;

  auto* analyze = app.add_subcommand("analyze", "Primitive relations, m(X), opponents, relevant relations");
  analyze->add_option("fan", fan_path, "TORICFAN file")->required();

  auto* pipeline = app.add_subcommand("pipeline", "Reduce along a centered relation and certify non-2-Fano-ness");
  pipeline->add_option("fan", fan_path, "TORICFAN file")->required();
  pipeline->add_option("--centered", centered, "Centered collection, comma separated")->delimiter(',');
  pipeline->add_option("--cert", cert_path, "Write the certificate JSON here");
  pipeline->add_option("--log", log_path, "Write the transformation log JSON here");
  pipeline->add_option("-o,--output", out_path, "Write the output fan here");
  pipeline->add_option("--exceptional-first", exceptional_first,
                       "Exceptional case: position of the x ray contracted first");
  pipeline->add_option("--cut-out", cut_out, "Position of the centered ray cut out by the test surface")
      ->check(CLI::Range(0, 2));

  auto* screen = app.add_subcommand("screen", "ch2 against every invariant surface");
  screen->add_option("fan", fan_path, "TORICFAN file")->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild a fan from its primitive relations");
  reconstruct->add_option("relations", rel_path, "Relation file")->required();
  reconstruct->add_option("-d,--dim", dim, "Dimension")->required()->check(CLI::PositiveNumber);
  reconstruct->add_option("-o,--output", out_path, "Output TORICFAN file (default stdout)");

  auto* bundle = app.add_subcommand("bundle", "Fan of P(O(a0)+...+O(am)) over P1");
  bundle->add_option("-a,--degrees", degrees, "Degrees, comma separated")->required()->delimiter(',');
  bundle->add_option("-o,--output", out_path, "Output TORICFAN file (default stdout)");

  auto* batch = app.add_subcommand("batch", "Classify every .fan file of a directory");
  batch->add_option("dir", dir_path, "Directory")->required()->check(CLI::ExistingDirectory);
  batch->add_option("-o,--output", out_path, "CSV output (default stdout)");
  batch->add_option("-j,--jobs", workers, "Worker threads (0 = all cores)");

  auto* check_cert = app.add_subcommand("check-cert", "Re-check a certificate JSON file");
  check_cert->add_option("json", cert_path, "Certificate file")->required();

  auto* diag = app.add_subcommand("diagnose-m3", "Classify relevant relations for minimal P-dimension 3");
  diag->add_option("fan", fan_path, "TORICFAN file")->required();
  diag->add_option("--centered", centered, "Centered collection, comma separated")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(fan_path);
    if (*pipeline)
      return cmd_pipeline(fan_path, centered, cert_path, log_path, out_path, exceptional_first, cut_out);
    if (*screen) return cmd_screen(fan_path);
    if (*reconstruct) return cmd_reconstruct(rel_path, dim, out_path);
    if (*bundle) return cmd_bundle(degrees, out_path);
    if (*batch) return cmd_batch(dir_path, out_path, workers);
    if (*check_cert) return cmd_check_cert(cert_path);
    if (*diag) return cmd_diagnose_m3(fan_path, centered);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return 2;
}
