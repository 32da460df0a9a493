#include "gcff/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "gcff/errors.hpp"
#include "gcff/io.hpp"
#include "gcff/metrics.hpp"
#include "gcff/params.hpp"
#include "gcff/render.hpp"
#include "gcff/solver.hpp"
#include "gcff/synth.hpp"
#include "gcff/tune.hpp"

namespace gcff {
namespace {

namespace fs = std::filesystem;

struct SolverFlags {
  std::string profile;
  std::optional<double> stride;
  std::optional<double> sigma;
  std::optional<double> mdl_weight;
  std::optional<double> visibility_weight;
  std::optional<double> theta_hat;
  std::optional<double> k;
  std::optional<int> max_iterations;
  bool literal_gate = false;
  bool no_visibility = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--profile", profile,
                    "Parameter profile: synthetic, idiap_poster, "
                    "cocktail_party, coffee_break, gdet");
    cmd->add_option("--stride", stride, "Stride D (scene units)");
    cmd->add_option("--sigma", sigma, "Deviation sigma (scene units)");
    cmd->add_option("--mdl-weight", mdl_weight,
                    "Cost per active centre (default sigma^2)");
    cmd->add_option("--visibility-weight", visibility_weight,
                    "Scale of the occlusion penalty (default sigma^2)");
    cmd->add_option("--theta-hat", theta_hat, "Occlusion cone half-angle, rad");
    cmd->add_option("--k", k, "Occlusion sharpness K");
    cmd->add_option("--max-iterations", max_iterations, "Iteration cap");
    cmd->add_flag("--literal-gate", literal_gate,
                  "Penalize outside the cone instead of inside it");
    cmd->add_flag("--no-visibility", no_visibility,
                  "Drop the occlusion penalty from the objective");
  }

  Params resolve() const {
    if (stride.has_value() != sigma.has_value()) {
      throw InvalidInput("--stride and --sigma must be given together");
    }
    if (stride && !profile.empty()) {
      throw InvalidInput("--profile conflicts with --stride/--sigma");
    }
    Params p = stride ? Params::with_defaults(*stride, *sigma)
                      : profile_params(profile.empty() ? "synthetic" : profile);
    if (mdl_weight) p.mdl_weight = *mdl_weight;
    if (visibility_weight) p.visibility_weight = *visibility_weight;
    if (theta_hat) p.theta_hat = *theta_hat;
    if (k) p.k_repulsion = *k;
    if (max_iterations) p.max_iterations = *max_iterations;
    p.literal_visibility_gate = literal_gate;
    p.visibility = !no_visibility;
    p.validate();
    return p;
  }
};

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  fn(f);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw InvalidInput(std::string("malformed ") + what + " '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// "a..b" or a comma-separated list.
std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo < 0 || hi < lo) throw InvalidInput("bad level range '" + text + "'");
    for (int l = lo; l <= hi; ++l) out.push_back(l);
    return out;
  }
  for (double v : parse_list(text, "level")) {
    if (v < 0 || v != static_cast<int>(v)) throw InvalidInput("bad level");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& i : items) s += (s.empty() ? "" : ", ") + i;
  return s;
}

void cmd_detect(const std::string& frames_path, const Params& params,
                const std::string& out_path, const std::string& render_dir,
                std::ostream& out) {
  const auto scenes = parse_frames(frames_path);
  std::vector<FrameGroups> result;
  if (!render_dir.empty()) fs::create_directories(render_dir);
  for (const auto& s : scenes) {
    const auto det = detect_groups(s, params);
    result.emplace_back(s.frame_id(), det.groups);
    if (!render_dir.empty()) {
      const fs::path file = fs::path(render_dir) / ("frame_" + s.frame_id() + ".svg");
      std::ofstream svg(file, std::ios::binary);
      if (!svg) throw std::runtime_error("cannot write '" + file.string() + "'");
      svg << render_svg(s, det, params);
    }
  }
  emit(out_path, out, [&](std::ostream& o) { write_groups(o, result); });
}

void cmd_eval(const std::string& gt_path, const std::string& det_path,
              double tolerance, bool with_gtm, bool with_cardinality,
              const std::string& label, const std::string& out_path,
              std::ostream& out) {
  const auto gt = parse_groups(gt_path);
  const auto det = parse_groups(det_path);
  std::map<std::string, const GroupSet*> det_by_frame;
  for (const auto& [f, g] : det) det_by_frame[f] = &g;
  std::set<std::string> gt_frames;
  std::vector<std::string> unmatched;
  for (const auto& [f, g] : gt) {
    gt_frames.insert(f);
    if (!det_by_frame.contains(f)) unmatched.push_back(f + " (missing in detections)");
  }
  for (const auto& [f, g] : det) {
    if (!gt_frames.contains(f)) unmatched.push_back(f + " (missing in ground truth)");
  }
  if (!unmatched.empty()) {
    throw InvalidInput("frame ids do not align: " + join(unmatched));
  }
  std::vector<FramePair> frames;
  for (const auto& [f, g] : gt) frames.push_back({f, g, *det_by_frame[f]});
  const auto report = evaluate(frames, tolerance, with_gtm, with_cardinality);
  emit(out_path, out,
       [&](std::ostream& o) { write_report(o, report, label); });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Free-standing conversational group detection and evaluation",
               "gcff"};
  app.require_subcommand(1);

  // detect
  auto* detect = app.add_subcommand("detect", "Detect groups in every frame");
  std::string frames_path, out_path, render_dir;
  SolverFlags detect_flags;
  detect->add_option("frames", frames_path, "Frame file")->required();
  detect->add_option("--out", out_path, "Group file to write (default stdout)");
  detect->add_option("--render", render_dir, "Write one SVG per frame here");
  detect_flags.add_to(detect);

  // eval
  auto* eval = app.add_subcommand("eval", "Score detections against ground truth");
  std::string gt_path, det_path, label = "detector";
  double tolerance = 2.0 / 3.0;
  bool with_gtm = false, with_card = false;
  eval->add_option("ground_truth", gt_path, "Ground-truth group file")->required();
  eval->add_option("detections", det_path, "Detected group file")->required();
  eval->add_option("--tolerance", tolerance, "Tolerance threshold T in (0,1]");
  eval->add_flag("--gtm", with_gtm, "Also report the GTM score");
  eval->add_flag("--cardinality", with_card, "Also report F1 per group size");
  eval->add_option("--label", label, "Row label in the cardinality table");
  eval->add_option("--out", out_path, "Report file (default stdout)");

  // tune
  auto* tune_cmd = app.add_subcommand("tune", "Grid-search stride and sigma");
  std::string groups_path, strides_text, sigmas_text;
  double split = 0.5;
  std::optional<std::uint64_t> shuffle_seed;
  SolverFlags tune_flags;
  tune_cmd->add_option("frames", frames_path, "Frame file")->required();
  tune_cmd->add_option("--groups", groups_path, "Ground-truth group file")->required();
  tune_cmd->add_option("--strides", strides_text, "Comma-separated strides")->required();
  tune_cmd->add_option("--sigmas", sigmas_text, "Comma-separated sigmas")->required();
  tune_cmd->add_option("--split", split, "Training fraction (leading frames)");
  tune_cmd->add_option("--tolerance", tolerance, "Tolerance threshold T");
  tune_cmd->add_option("--seed", shuffle_seed, "Shuffle frames with this seed first");
  tune_cmd->add_option("--out", out_path, "Result file (default stdout)");
  tune_flags.add_to(tune_cmd);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate annotated synthetic frames");
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::string groups_out;
  SolverFlags synth_flags;
  synth->add_option("--count", count, "Number of frames");
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--out", out_path, "Frame file to write")->required();
  synth->add_option("--groups-out", groups_out, "Ground-truth group file to write")
      ->required();
  synth_flags.add_to(synth);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "F1 versus noise level");
  std::string sweep_frames, mode_name = "both", levels_text = "0..10";
  double sigma_x = 20.0, sigma_y = 20.0, sigma_theta = 0.1;
  SolverFlags sweep_flags;
  sweep->add_option("frames", sweep_frames,
                    "Frame file (omit to generate --count synthetic frames)");
  sweep->add_option("--groups", groups_path, "Ground-truth group file");
  sweep->add_option("--count", count, "Synthetic frames when no file is given");
  sweep->add_option("--seed", seed, "Noise (and generation) seed");
  sweep->add_option("--mode", mode_name, "position, orientation or both");
  sweep->add_option("--levels", levels_text, "Levels as a..b or a,b,c");
  sweep->add_option("--sigma-x", sigma_x, "Position deviation per level, x");
  sweep->add_option("--sigma-y", sigma_y, "Position deviation per level, y");
  sweep->add_option("--sigma-theta", sigma_theta, "Orientation deviation per level");
  sweep->add_option("--tolerance", tolerance, "Tolerance threshold T");
  sweep->add_option("--out", out_path, "CSV file (default stdout)");
  sweep_flags.add_to(sweep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*detect) {
      cmd_detect(frames_path, detect_flags.resolve(), out_path, render_dir, out);
    } else if (*eval) {
      cmd_eval(gt_path, det_path, tolerance, with_gtm, with_card, label,
               out_path, out);
    } else if (*tune_cmd) {
      const auto scenes = parse_frames(frames_path, fs::path(groups_path));
      const auto strides = parse_list(strides_text, "stride");
      const auto sigmas = parse_list(sigmas_text, "sigma");
      TuneOptions opts;
      opts.split = split;
      opts.tolerance = tolerance;
      opts.shuffle_seed = shuffle_seed;
      const auto r = tune(scenes, strides, sigmas, tune_flags.resolve(), opts);
      emit(out_path, out, [&](std::ostream& o) {
        o << "stride: " << format_number(r.stride_d) << '\n';
        o << "sigma: " << format_number(r.sigma) << '\n';
        o << "train_frames: " << r.train_frames << '\n';
        o << "heldout_frames: " << r.heldout_frames << '\n';
        o << "train_f1: " << format_number(r.train_f1) << '\n';
        o << "heldout_f1: " << format_number(r.heldout_f1) << '\n';
        o << "\n[grid]\nstride,sigma,train_f1\n";
        for (const auto& c : r.grid) {
          o << format_number(c.stride_d) << ',' << format_number(c.sigma) << ','
            << format_number(c.train_f1) << '\n';
        }
      });
    } else if (*synth) {
      const auto params = synth_flags.resolve();
      const auto scenes = generate_benchmark(count, seed, params);
      std::vector<FrameGroups> gt;
      for (const auto& s : scenes) gt.emplace_back(s.frame_id(), *s.ground_truth());
      save_frames(out_path, scenes);
      save_groups(groups_out, gt);
    } else if (*sweep) {
      const auto params = sweep_flags.resolve();
      std::vector<Scene> scenes;
      if (sweep_frames.empty()) {
        scenes = generate_benchmark(count, seed, params);
      } else {
        if (groups_path.empty()) {
          throw InvalidInput("--groups is required with a frame file");
        }
        scenes = parse_frames(sweep_frames, fs::path(groups_path));
      }
      NoiseSpec noise;
      noise.sigma_x = sigma_x;
      noise.sigma_y = sigma_y;
      noise.sigma_theta = sigma_theta;
      noise.seed = seed;
      const auto levels = parse_levels(levels_text);
      const auto result = noise_sweep(scenes, params, noise, levels,
                                      parse_noise_mode(mode_name), tolerance);
      emit(out_path, out, [&](std::ostream& o) {
        o << "level,f1\n";
        for (const auto& p : result.curve) {
          o << p.level << ',' << format_number(p.f1) << '\n';
        }
      });
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gcff
