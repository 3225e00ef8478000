// Command-line front end: build modules, tensor and block computations,
// catalogued decompositions, and the reproduction suite.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "okit/report.hpp"

namespace {

using namespace okit;

constexpr int kExitOk = 0;
constexpr int kExitSpec = 2;
constexpr int kExitWindow = 3;
constexpr int kExitVerify = 4;

struct ModuleSpec {
  std::string algebra = "A1";
  std::vector<long> verma, simple_hw, dual_verma;
  long projective = 0;
  bool has_projective = false;
};

AlgebraType parse_algebra(const std::string& s) {
  if (s == "A1" || s == "a1" || s == "sl2") return AlgebraType::A1;
  if (s == "A2" || s == "a2" || s == "sl3") return AlgebraType::A2;
  throw SpecError("unknown algebra '" + s + "'");
}

Weight parse_weight(AlgebraType ty, const std::vector<long>& coords) {
  int rank = root_datum(ty).rank();
  if (static_cast<int>(coords.size()) != rank)
    throw SpecError("expected " + std::to_string(rank) +
                    " weight coordinates, got " + std::to_string(coords.size()));
  RatVec v;
  for (long c : coords) v.emplace_back(c);
  return Weight(std::move(v));
}

ModPtr build_module(const ModuleSpec& spec, int depth) {
  AlgebraType ty = parse_algebra(spec.algebra);
  int given = static_cast<int>(!spec.verma.empty()) +
              static_cast<int>(!spec.simple_hw.empty()) +
              static_cast<int>(!spec.dual_verma.empty()) +
              static_cast<int>(spec.has_projective);
  if (given != 1)
    throw SpecError("give exactly one of --verma, --simple, --dual-verma, "
                    "--projective");
  if (!spec.verma.empty()) return verma(ty, parse_weight(ty, spec.verma), depth);
  if (!spec.simple_hw.empty())
    return simple(ty, parse_weight(ty, spec.simple_hw), depth);
  if (!spec.dual_verma.empty())
    return dual(verma(ty, parse_weight(ty, spec.dual_verma), depth));
  // A1 projective cover of the antidominant weight in the block of lambda
  if (ty != AlgebraType::A1)
    throw SpecError("--projective is available for A1 only");
  long l = spec.projective;
  if (l < 0) throw SpecError("--projective takes the dominant block weight");
  auto ml = verma(ty, parse_weight(ty, {l}), depth);
  auto t = tensor(ml, dual(verma(ty, parse_weight(ty, {0}), depth)), depth);
  return materialize(chi_block(t, parse_weight(ty, {l}))).first;
}

void add_module_flags(CLI::App* cmd, ModuleSpec& spec) {
  cmd->add_option("--algebra", spec.algebra, "A1 or A2")->capture_default_str();
  cmd->add_option("--verma", spec.verma, "Verma highest weight")
      ->delimiter(',')
      ->expected(1, 2);
  cmd->add_option("--simple", spec.simple_hw, "simple highest weight")
      ->delimiter(',')
      ->expected(1, 2);
  cmd->add_option("--dual-verma", spec.dual_verma,
                  "contravariant dual Verma highest weight")
      ->delimiter(',')
      ->expected(1, 2);
  cmd->add_flag_callback("--projective", [&spec] { spec.has_projective = true; },
                         "A1 projective cover realization (see --block-weight)");
  cmd->add_option("--block-weight", spec.projective,
                  "dominant block weight for --projective");
}

void print_character_table(const ModPtr& m) {
  std::cout << m->provenance << "  (depth " << m->depth << ", dim "
            << m->total_dim() << ")\n";
  std::cout << "character:\n";
  for (const auto& [w, d] : character(m))
    std::cout << "  " << w.str() << " : " << d << "\n";
  auto mv = maximal_vector_weights(*m);
  std::cout << "maximal vectors:\n";
  if (mv.empty()) std::cout << "  (none)\n";
  for (const auto& [w, d] : mv) std::cout << "  " << w.str() << " : " << d << "\n";
}

void print_certificate(const DecompositionCertificate& cert) {
  std::cout << cert.target << "\n";
  std::cout << "valid: " << (cert.valid ? "yes" : "no")
            << "  complete: " << (cert.complete ? "yes" : "no") << "\n";
  if (!cert.failure.empty()) std::cout << "failure: " << cert.failure << "\n";
  for (const auto& s : cert.summands) {
    std::cout << "  summand " << s.kind << " at " << s.hw.str() << " (dim "
              << s.part.total_dim() << ")";
    if (s.indec.checked)
      std::cout << (s.indec.indecomposable
                        ? "  indecomposable within window (margin "
                        : "  DECOMPOSABLE (margin ")
                << s.indec.margin << ")";
    std::cout << "\n";
    if (!s.note.empty()) std::cout << "    " << s.note << "\n";
  }
  for (const auto& n : cert.notes) std::cout << "note: " << n << "\n";
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const WindowError& e) {
    std::cerr << "window error: " << e.what() << "\n";
    return kExitWindow;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated highest-weight module toolkit"};
  app.require_subcommand(1);
  bool json_out = false;
  bool emit_evidence = false;
  int threads = 1;
  app.add_flag("--json", json_out, "emit JSON instead of text");
  app.add_flag("--emit-evidence", emit_evidence,
               "include bases and per-weight ranks in JSON certificates");
  app.add_option("--threads", threads, "worker threads (accepted; cases run "
                                       "sequentially for determinism)");

  // build ------------------------------------------------------------------
  auto* cb = app.add_subcommand("build", "construct a module and report its "
                                         "character and maximal vectors");
  ModuleSpec bspec;
  int bdepth = 8;
  add_module_flags(cb, bspec);
  cb->add_option("--depth", bdepth, "truncation depth")->capture_default_str();

  // tensor -----------------------------------------------------------------
  auto* ct = app.add_subcommand("tensor", "tensor product, optionally one "
                                          "central-character block");
  std::string talg = "A1";
  std::vector<long> tleft, tright, tblock;
  bool tdual_left = false, tdual_right = false, tall_blocks = false;
  int tdepth = 8;
  ct->add_option("--algebra", talg, "A1 or A2")->capture_default_str();
  ct->add_option("--left", tleft, "left Verma highest weight")
      ->delimiter(',')
      ->expected(1, 2)
      ->required();
  ct->add_option("--right", tright, "right Verma highest weight")
      ->delimiter(',')
      ->expected(1, 2)
      ->required();
  ct->add_flag("--dual-left", tdual_left, "use the dual Verma on the left");
  ct->add_flag("--dual-right", tdual_right, "use the dual Verma on the right");
  ct->add_option("--block", tblock, "linkage representative of one block")
      ->delimiter(',')
      ->expected(1, 2);
  ct->add_flag("--all-blocks", tall_blocks, "report every block");
  ct->add_option("--depth", tdepth, "truncation depth")->capture_default_str();

  // decompose --------------------------------------------------------------
  auto* cd = app.add_subcommand("decompose", "catalogued decomposition into "
                                             "indecomposable Borel summands");
  ModuleSpec dspec;
  int ddepth = 8;
  add_module_flags(cd, dspec);
  cd->add_option("--depth", ddepth, "truncation depth")->capture_default_str();

  // verify-paper -----------------------------------------------------------
  auto* cv = app.add_subcommand("verify-paper", "run the reproduction suite");
  std::string only;
  int vdepth_sl2 = 10, vdepth_sl3 = 8;
  cv->add_option("--only", only, "identifier prefix filter (e.g. sl2, "
                                 "sl3-case-1, prop)");
  cv->add_option("--depth-sl2", vdepth_sl2, "depth for the sl2 checks")
      ->capture_default_str();
  cv->add_option("--depth-sl3", vdepth_sl3, "depth for the sl3 checks")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (cb->parsed())
    return guarded([&] {
      auto m = build_module(bspec, bdepth);
      if (json_out)
        std::cout << report::module_json(m).dump(2) << "\n";
      else
        print_character_table(m);
      return kExitOk;
    });

  if (ct->parsed())
    return guarded([&] {
      AlgebraType ty = parse_algebra(talg);
      auto mk = [&](const std::vector<long>& hw, bool dualize) {
        auto v = verma(ty, parse_weight(ty, hw), tdepth);
        return dualize ? dual(v) : v;
      };
      auto t = tensor(mk(tleft, tdual_left), mk(tright, tdual_right), tdepth);
      ordered_json j;
      j["schema"] = "1";
      j["kind"] = "tensor";
      j["algebra"] = to_string(ty);
      j["depth"] = tdepth;
      j["character"] = report::character_json(character(t));
      if (!json_out) print_character_table(t);
      auto describe_block = [&](const Weight& rep) {
        Submodule blk = chi_block(t, rep);
        ordered_json b;
        b["label"] = report::block_label_json(central_character(ty, rep));
        b["dim"] = blk.total_dim();
        b["character"] = report::character_json(blk.character());
        if (!json_out)
          std::cout << "block " << rep.str() << ": dim " << blk.total_dim()
                    << "\n";
        if (blk.total_dim() > 0) {
          auto f = verma_flag(materialize(blk).first);
          if (f) {
            b["flag"] = report::flag_json(*f);
            if (!json_out) {
              std::cout << "  flag:";
              for (const auto& [w, c] : f->multiset)
                std::cout << " " << w.str() << "x" << c;
              std::cout << "\n";
            }
          }
        }
        return b;
      };
      if (!tblock.empty()) {
        j["blocks"] = ordered_json::array(
            {describe_block(parse_weight(ty, tblock))});
      } else if (tall_blocks) {
        ordered_json blocks = ordered_json::array();
        std::set<Weight> seen;
        for (const auto& [w, d] : maximal_vector_weights(*t)) {
          Weight rep = root_datum(ty).dominant_representative(w);
          if (seen.insert(rep).second) blocks.push_back(describe_block(rep));
        }
        j["blocks"] = std::move(blocks);
      }
      if (json_out) std::cout << j.dump(2) << "\n";
      return kExitOk;
    });

  if (cd->parsed())
    return guarded([&] {
      auto cert = decompose_b(build_module(dspec, ddepth));
      if (json_out)
        std::cout << report::certificate_json(cert, emit_evidence).dump(2)
                  << "\n";
      else
        print_certificate(cert);
      return cert.valid ? kExitOk : kExitVerify;
    });

  return guarded([&] {
    auto s = run_verification(only, vdepth_sl2, vdepth_sl3);
    if (json_out) {
      std::cout << report::verification_json(s).dump(2) << "\n";
    } else {
      for (const auto& r : s.results)
        std::printf("%-26s %s  %7.2fs  %s\n", r.id.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
      std::printf("overall: %s\n", s.all_pass() ? "PASS" : "FAIL");
    }
    return s.all_pass() ? kExitOk : kExitVerify;
  });
}
