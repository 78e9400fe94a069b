#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ecg/codebook_io.hpp>
#include <ecg/edit_model.hpp>
#include <ecg/engine.hpp>
#include <ecg/generator.hpp>
#include <ecg/parallel.hpp>

namespace {

struct SpecFlags {
  std::string eoi;
  std::string eq;
  bool raw_check = false;
};

struct ConstraintFlags {
  int aug_len = 1;
  int run = 3;
  double gc_bal = 1.0;
  int ctx_len = 0;
};

struct GenFlags {
  std::size_t size = 2;
  SpecFlags spec;
  ConstraintFlags constraint;
  std::size_t candidates = 8;
  std::uint64_t seed = 0;
  std::size_t max_steps = 256;
  std::size_t extra_steps = 0;
  std::string out;
  bool verbose = false;
  bool record_timing = false;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f, bool with_raw) {
  cmd->add_option("--eoi", f.eoi, "edits of interest, e.g. sub,ins:C,del")
      ->required();
  cmd->add_option("--eq", f.eq, "edit quotas, e.g. 2,1,1")->required();
  if (with_raw) {
    cmd->add_flag("--raw-check", f.raw_check,
                  "treat --eoi/--eq as the pair-check spec itself instead of "
                  "deriving the check quota from a correction target");
  }
}

void add_constraint_flags(CLI::App* cmd, ConstraintFlags& f) {
  cmd->add_option("--run", f.run, "max homopolymer run length");
  cmd->add_option("--gc-bal", f.gc_bal, "max GC (and AT) window fraction");
  cmd->add_option("--ctx-len", f.ctx_len, "constraint window context length");
  cmd->add_option("--aug-len", f.aug_len, "suffix length appended per step");
}

// Arity and syntax problems in --eoi/--eq are usage errors.
ecg::EditSpec parse_spec_flags(const SpecFlags& f) {
  ecg::EditSpec spec;
  spec.ops = ecg::parse_ops(f.eoi);
  spec.quotas = ecg::parse_quotas(f.eq);
  if (spec.ops.size() != spec.quotas.size()) {
    throw ecg::ProfileError("--eoi lists " + std::to_string(spec.ops.size()) +
                            " ops but --eq lists " +
                            std::to_string(spec.quotas.size()) + " quotas");
  }
  return spec;
}

ecg::GenerationConfig make_config(const GenFlags& f) {
  ecg::GenerationConfig config;
  config.size = f.size;
  const ecg::EditSpec given = parse_spec_flags(f.spec);
  if (f.spec.raw_check) {
    config.check = given;
  } else {
    config.check = ecg::quota_for_pair_check(given);
    config.correction = given;
  }
  config.constraint.run_max = f.constraint.run;
  config.constraint.gc_balance = f.constraint.gc_bal;
  config.constraint.context_len = f.constraint.ctx_len;
  config.constraint.augment_len = f.constraint.aug_len;
  config.candidates_per_step = f.candidates;
  config.seed = f.seed;
  config.max_steps = f.max_steps;
  config.min_extra_steps = f.extra_steps;
  return config;
}

int run_gen(const GenFlags& f) {
  const ecg::GenerationConfig config = make_config(f);
  ecg::ProgressFn progress;
  if (f.verbose) {
    progress = [](const ecg::ProgressRecord& r) {
      std::fprintf(stderr, "step=%zu loss=%llu elapsed=%.3fs\n", r.step,
                   static_cast<unsigned long long>(r.total_loss), r.elapsed_s);
    };
  }
  const auto started = std::chrono::steady_clock::now();
  const ecg::Codebook cb = ecg::grow_codebook(config, progress);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  ecg::save_codebook(cb, f.out,
                     f.record_timing ? std::optional<double>(elapsed)
                                     : std::nullopt);
  std::printf("wrote %s: m=%zu n=%zu steps=%zu redundancy=%.4f\n",
              f.out.c_str(), cb.size(), cb.length(), cb.steps,
              ecg::redundancy(cb));
  return 0;
}

int run_verify(const std::string& path) {
  const ecg::Codebook cb = ecg::load_codebook(path);
  if (cb.size() < 2) {
    std::printf("ok: %zu sequence(s), no pairs to check\n", cb.size());
    return 0;
  }
  const ecg::TransitionKernel kernel(ecg::build_profile(cb.check));
  const auto bad = ecg::find_confusable_pair(cb.sequences, kernel);
  if (bad.has_value()) {
    std::printf("confusable pair (%zu, %zu): %s %s loss=%llu\n", bad->first,
                bad->second, cb.sequences[bad->first].c_str(),
                cb.sequences[bad->second].c_str(),
                static_cast<unsigned long long>(bad->loss));
    return 1;
  }
  std::printf("ok: %zu sequences, %zu pairs, all non-confusable\n", cb.size(),
              cb.size() * (cb.size() - 1) / 2);
  return 0;
}

int run_pair(const std::string& s1, const std::string& s2,
             const SpecFlags& f) {
  const ecg::EditSpec spec = parse_spec_flags(f);
  if (s1.size() != s2.size()) {
    throw ecg::ProfileError("pair expects equal-length sequences");
  }
  ecg::require_sequence(s1);
  ecg::require_sequence(s2);
  const ecg::TransitionKernel kernel(ecg::build_profile(spec));
  const ecg::PairReport report = ecg::analyze_pair(s1, s2, kernel);
  ecg::FecSet set = ecg::from_tuples(report.tuples, kernel.profile);
  std::printf("tuples: %s\n",
              ecg::format_tuples(set, kernel.profile).c_str());
  std::printf("loss: %llu\n", static_cast<unsigned long long>(report.loss));
  std::printf("visits: %llu\n",
              static_cast<unsigned long long>(report.visits));
  return 0;
}

int run_bench(GenFlags f, const std::vector<int>& aug_lens) {
  ecg::set_worker_threads(1);
  std::printf("aug_len,seconds,n,redundancy\n");
  for (int aug : aug_lens) {
    f.constraint.aug_len = aug;
    const ecg::GenerationConfig config = make_config(f);
    const auto started = std::chrono::steady_clock::now();
    const ecg::Codebook cb = ecg::grow_codebook(config);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    std::printf("%d,%.3f,%zu,%.4f\n", aug, elapsed, cb.length(),
                ecg::redundancy(cb));
  }
  return 0;
}

int run_report(const std::vector<std::string>& paths) {
  std::printf("m,n,redundancy,baseline,gap\n");
  for (const auto& path : paths) {
    const ecg::Codebook cb = ecg::load_codebook(path);
    if (cb.length() == 0) {
      throw ecg::InvariantError("report needs nonempty sequences: " + path);
    }
    const double r = ecg::redundancy(cb);
    const double b = ecg::baseline_redundancy(cb.length());
    std::printf("%zu,%zu,%.4f,%.4f,%.4f\n", cb.size(), cb.length(), r, b,
                b - r);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codebooks of mutually non-confusable DNA sequences"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "grow a codebook and save it");
  gen->add_option("--size", gen_flags.size, "number of sequences")->required();
  add_spec_flags(gen, gen_flags.spec, /*with_raw=*/true);
  add_constraint_flags(gen, gen_flags.constraint);
  gen->add_option("--candidates", gen_flags.candidates,
                  "suffix sample budget per step");
  gen->add_option("--seed", gen_flags.seed, "RNG seed");
  gen->add_option("--max-steps", gen_flags.max_steps, "growth round cap");
  gen->add_option("--extra-steps", gen_flags.extra_steps,
                  "extra rounds after loss first reaches zero");
  gen->add_option("--out", gen_flags.out, "output codebook path")->required();
  gen->add_flag("--verbose", gen_flags.verbose, "progress lines on stderr");
  gen->add_flag("--record-timing", gen_flags.record_timing,
                "store wall time in the file (breaks byte-identical reruns)");

  std::string verify_path;
  CLI::App* verify = app.add_subcommand(
      "verify", "check every pair of a saved codebook for zero loss");
  verify->add_option("path", verify_path, "codebook file")->required();

  std::string pair_s1, pair_s2;
  SpecFlags pair_spec;
  CLI::App* pair = app.add_subcommand(
      "pair", "print terminal tuples, loss, and visit count for one pair");
  pair->add_option("s1", pair_s1, "first sequence")->required();
  pair->add_option("s2", pair_s2, "second sequence")->required();
  add_spec_flags(pair, pair_spec, /*with_raw=*/false);

  GenFlags bench_flags;
  std::vector<int> bench_aug_lens;
  CLI::App* bench = app.add_subcommand(
      "bench", "time generation across augment lengths, CSV on stdout");
  bench->add_option("--size", bench_flags.size, "number of sequences")
      ->required();
  add_spec_flags(bench, bench_flags.spec, /*with_raw=*/true);
  bench->add_option("--run", bench_flags.constraint.run,
                    "max homopolymer run length");
  bench->add_option("--gc-bal", bench_flags.constraint.gc_bal,
                    "max GC (and AT) window fraction");
  bench->add_option("--ctx-len", bench_flags.constraint.ctx_len,
                    "constraint window context length");
  bench->add_option("--aug-lens", bench_aug_lens,
                    "augment lengths to sweep, e.g. 1,2,3")
      ->required()
      ->delimiter(',');
  bench->add_option("--candidates", bench_flags.candidates,
                    "suffix sample budget per step");
  bench->add_option("--seed", bench_flags.seed, "RNG seed");
  bench->add_option("--max-steps", bench_flags.max_steps, "growth round cap");

  std::vector<std::string> report_paths;
  CLI::App* report = app.add_subcommand(
      "report", "redundancy versus baseline for saved codebooks, CSV");
  report->add_option("paths", report_paths, "codebook files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return run_gen(gen_flags);
    if (*verify) return run_verify(verify_path);
    if (*pair) return run_pair(pair_s1, pair_s2, pair_spec);
    if (*bench) return run_bench(bench_flags, bench_aug_lens);
    if (*report) return run_report(report_paths);
  } catch (const ecg::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const ecg::ProfileError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const ecg::CapacityError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const ecg::AlphabetError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const ecg::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
