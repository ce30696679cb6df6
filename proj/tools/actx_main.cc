// Copyright 2026 The actx Authors
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


// actx: command-line front end to the operators, oracles-backed checks,
// attack generator and synthetic demo.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "actx/attacks.h"
#include "actx/box_io.h"
#include "actx/ctx_mining.h"
#include "actx/error.h"
#include "actx/geometry.h"
#include "actx/op_checks.h"
#include "actx/parallel.h"
#include "actx/report.h"
#include "actx/rng.h"
#include "actx/roi_ops.h"
#include "actx/synth.h"
#include "actx/tensor.h"
#include "json.hpp"

namespace actx {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct RoiArgs {
  std::string features;
  std::string rois;
  std::string out;
  std::int64_t ph = 7;
  std::int64_t pw = 7;
  std::string backbone = "pool";
  std::int64_t samples = 2;
  std::size_t jobs = 1;
};

void AddRoiOptions(CLI::App* cmd, RoiArgs& a, bool with_backbone) {
  cmd->add_option("--features", a.features, "D x H x W feature map (FTEN)")
      ->required();
  cmd->add_option("--rois", a.rois, "RoI list (CSV)")->required();
  cmd->add_option("--out", a.out, "output tensor N x C x ph x pw (FTEN)")
      ->required();
  cmd->add_option("--ph", a.ph, "pooled height")->capture_default_str();
  cmd->add_option("--pw", a.pw, "pooled width")->capture_default_str();
  if (with_backbone) {
    cmd->add_option("--backbone", a.backbone, "pool or align")
        ->check(CLI::IsMember({"pool", "align"}))
        ->capture_default_str();
  }
  cmd->add_option("--jobs", a.jobs, "worker threads (default: $ACTX_JOBS or 1)")
      ->check(CLI::PositiveNumber);
}

RoiOpConfig MakeRoiConfig(const RoiArgs& a) {
  if (a.ph < 1 || a.pw < 1) throw Error("--ph and --pw must be >= 1");
  if (a.samples < 1) throw Error("--samples must be >= 1");
  RoiOpConfig c;
  c.pooled_h = a.ph;
  c.pooled_w = a.pw;
  c.backbone = a.backbone == "align" ? RoiBackbone::kAlign : RoiBackbone::kPool;
  c.samples_per_bin = a.samples;
  return c;
}

Tensor LoadFeatures(const std::string& path) {
  Tensor f = LoadFten(path);
  if (f.rank() != 3) {
    throw ShapeError("features '" + path + "' must be D x H x W, got " +
                     ShapeToString(f.dims()));
  }
  return f;
}

std::vector<ScoredBox> LoadRois(const std::string& path) {
  std::vector<ScoredBox> rois = LoadRoiList(path);
  if (rois.empty()) throw FormatError("'" + path + "' contains no RoIs");
  return rois;
}

// Runs fn(i) for every RoI on `jobs` threads, prefixing failures with the
// RoI index.
template <typename Fn>
void ForEachRoi(std::size_t n, std::size_t jobs, Fn fn) {
  ParallelFor(n, jobs, [&](std::size_t i) {
    try {
      fn(i);
    } catch (const std::exception& e) {
      throw Error("roi " + std::to_string(i) + ": " + e.what());
    }
  });
}

void WriteJson(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

void RunRoiOp(const RoiArgs& a, RoiBackbone backbone) {
  RoiArgs args = a;
  args.backbone = backbone == RoiBackbone::kAlign ? "align" : "pool";
  const RoiOpConfig config = MakeRoiConfig(args);
  const Tensor features = LoadFeatures(a.features);
  const std::vector<ScoredBox> rois = LoadRois(a.rois);
  std::vector<Tensor> maps(rois.size());
  ForEachRoi(rois.size(), a.jobs, [&](std::size_t i) {
    maps[i] = ExtractRoi(features, rois[i].box, config).data;
  });
  SaveFten(a.out, Stack(maps));
}

struct CtxMineArgs {
  RoiArgs roi;
  std::string report;
  std::string scorer;
  double gate = 1.0;
};

void RunCtxMine(const CtxMineArgs& a) {
  MiningConfig config;
  config.roi = MakeRoiConfig(a.roi);
  config.score_gate = a.gate;
  const Tensor features = LoadFeatures(a.roi.features);
  const std::vector<ScoredBox> rois = LoadRois(a.roi.rois);
  const std::int64_t depth = features.dim(0);
  ContextScorer scorer =
      ContextScorer::Zeros(depth, config.roi.pooled_h, config.roi.pooled_w);
  if (!a.scorer.empty()) {
    scorer = ContextScorer::FromTensor(LoadFten(a.scorer),
                                       scorer.weights.size());
  }
  std::vector<Tensor> blocks(rois.size());
  std::vector<Json> records(rois.size());
  ForEachRoi(rois.size(), a.roi.jobs, [&](std::size_t i) {
    MinedRoIFeature mined = MineContext(features, rois[i].box, scorer, config);
    if (!a.report.empty()) records[i] = MinedToJson(mined);
    blocks[i] = std::move(mined.feature);
  });
  SaveFten(a.roi.out, Stack(blocks));
  if (!a.report.empty()) {
    Json j;
    j["feature_dims"] = features.dims();
    j["pooled"] = {config.roi.pooled_h, config.roi.pooled_w};
    j["backbone"] = a.roi.backbone;
    j["score_gate"] = config.score_gate;
    j["rois"] = records;
    WriteJson(a.report, j);
  }
}

struct VariantArgs {
  RoiArgs roi;
  std::string variant;
};

void RunVariant(const VariantArgs& a) {
  const std::optional<ContextVariant> v = ParseVariant(a.variant);
  if (!v) throw Error("unknown variant '" + a.variant + "'");
  const RoiOpConfig config = MakeRoiConfig(a.roi);
  const Tensor features = LoadFeatures(a.roi.features);
  const std::vector<ScoredBox> rois = LoadRois(a.roi.rois);
  std::vector<Tensor> out(rois.size());
  ForEachRoi(rois.size(), a.roi.jobs, [&](std::size_t i) {
    out[i] = FixedContextVariant(features, rois[i].box, *v, config).feature;
  });
  SaveFten(a.roi.out, Stack(out));
}

struct EnumerateArgs {
  std::string cell;
  std::string bounds;
  std::string out;
  bool clipped = false;
};

void RunEnumerate(const EnumerateArgs& a) {
  const std::vector<double> c = ParseNumberList(a.cell, 4);
  const Box cell{c[0], c[1], c[2], c[3]};
  if (!cell.has_positive_area()) {
    throw DegenerateRoiError("cell " + FormatBox(cell) + " has no area");
  }
  std::optional<MapBounds> bounds;
  if (!a.bounds.empty()) {
    const std::vector<double> b = ParseNumberList(a.bounds, 2);
    if (!(b[0] > 0.0 && b[1] > 0.0)) throw Error("--bounds must be positive");
    bounds = MapBounds{b[0], b[1]};
  }
  const CandidateGridSpec spec;
  const CandidatePool pool = EnumerateCellCandidates(cell, spec, bounds);
  std::ostringstream s;
  s << "# cell " << FormatBox(cell) << "\n";
  s << "# anchor " << FormatBox(pool.anchor) << "\n";
  s << "# candidates " << pool.size() << " of " << spec.raw_count() << "\n";
  std::vector<ScoredBox> boxes;
  for (const Candidate& cand : pool.candidates) {
    boxes.push_back({a.clipped ? cand.clipped : cand.box, 0.0, 0});
  }
  WriteRoiList(s, boxes, RoiFields::kBox);
  WriteText(a.out, s.str());
}

struct GradCheckArgs {
  std::string op;
  std::uint64_t seed = 0;
  double step = 1e-2;
  std::size_t probes = 64;
  double tolerance = 1e-3;
  std::string out;
};

int RunGradCheck(const GradCheckArgs& a) {
  const std::optional<CheckedOp> op = ParseCheckedOp(a.op);
  if (!op) throw Error("unknown op '" + a.op + "'");
  GradCheckOptions options;
  options.step = a.step;
  options.seed = a.seed;
  options.probes = a.probes == 0 ? OpCheckInputSize(*op, a.seed) : a.probes;
  const GradCheckReport r = CheckOpGradient(*op, a.seed, options);
  Json j;
  j["op"] = std::string(CheckedOpName(*op));
  j["seed"] = a.seed;
  j["tolerance"] = a.tolerance;
  j["denominator_floor"] = options.denominator_floor;
  j.update(GradCheckToJson(r));
  j["passed"] = r.Passed(a.tolerance);
  WriteJson(a.out, j);
  if (!r.Passed(a.tolerance)) {
    std::cerr << "actx: gradient check failed: max relative error "
              << r.max_rel_error << " at index " << r.worst_index << "\n";
    return 3;
  }
  return 0;
}

struct NmsArgs {
  std::string rois;
  double iou = 0.7;
  std::string out;
};

void RunNms(const NmsArgs& a) {
  if (!(a.iou > 0.0 && a.iou <= 1.0)) throw Error("--iou must be in (0, 1]");
  const std::vector<ScoredBox> boxes = LoadRoiList(a.rois);
  std::vector<ScoredBox> kept;
  for (std::size_t i : Nms(boxes, a.iou)) kept.push_back(boxes[i]);
  std::ostringstream s;
  WriteRoiList(s, kept, RoiFields::kBoxScoreClass);
  WriteText(a.out, s.str());
}

struct AnchorArgs {
  std::int64_t height = 0;
  std::int64_t width = 0;
  std::string scales = "128,256,512";
  std::string ratios = "0.5,1,2";
  double stride = 16.0;
  std::string out;
};

void RunAnchors(const AnchorArgs& a) {
  if (a.height < 1 || a.width < 1) {
    throw Error("--height and --width must be >= 1");
  }
  if (!(a.stride > 0.0)) throw Error("--stride must be positive");
  const std::vector<double> scales = ParseNumberList(a.scales);
  const std::vector<double> ratios = ParseNumberList(a.ratios);
  for (double v : scales) {
    if (!(v > 0.0)) throw Error("anchor scales must be positive");
  }
  for (double v : ratios) {
    if (!(v > 0.0)) throw Error("anchor ratios must be positive");
  }
  std::vector<ScoredBox> boxes;
  for (const Box& b :
       GenerateAnchors(a.height, a.width, scales, ratios, a.stride)) {
    boxes.push_back({b, 0.0, 0});
  }
  std::ostringstream s;
  WriteRoiList(s, boxes, RoiFields::kBox);
  WriteText(a.out, s.str());
}

struct AttackArgs {
  std::string kind;
  std::uint64_t seed = 0;
  std::string boxes;
  std::string in;
  std::string out;
  std::string patch;
  std::string report;
  std::string in_dir;
  std::string out_dir;
  std::size_t jobs = 1;
};

Json PatchToJson(const PatchResult& p) {
  auto rect = [](const PixelRect& r) {
    return Json::array({r.x0, r.y0, r.x1, r.y1});
  };
  Json j;
  j["region"] = rect(p.region);
  if (p.axis) j["axis"] = std::string(FlipAxisName(*p.axis));
  if (p.source) j["source"] = rect(*p.source);
  j["fell_back_to_black"] = p.fell_back_to_black;
  return j;
}

std::vector<Box> LoadGtBoxes(const std::string& path) {
  std::vector<Box> gts;
  for (const ScoredBox& b : LoadRoiList(path)) gts.push_back(b.box);
  return gts;
}

Tensor LoadImage(const std::string& path) {
  Tensor t = LoadFten(path);
  if (t.rank() != 3) {
    throw ShapeError("image '" + path + "' must be C x H x W, got " +
                     ShapeToString(t.dims()));
  }
  return t;
}

void RunAttack(const AttackArgs& a) {
  const std::optional<PatchKind> kind = ParsePatchKind(a.kind);
  if (!kind) throw Error("unknown patch kind '" + a.kind + "'");
  std::optional<Tensor> patch;
  if (!a.patch.empty()) patch = LoadFten(a.patch);
  if (*kind == PatchKind::kAdversarial && !patch) {
    throw Error("--kind adversarial requires --patch");
  }
  const Tensor* patch_ptr = patch ? &*patch : nullptr;

  const bool batch = !a.in_dir.empty() || !a.out_dir.empty();
  if (!batch) {
    if (a.in.empty() || a.out.empty() || a.boxes.empty()) {
      throw Error("attack needs --in, --out and --boxes (or --in-dir and --out-dir)");
    }
    const Tensor image = LoadImage(a.in);
    const std::vector<Box> gts = LoadGtBoxes(a.boxes);
    const ImageAttackResult r = AttackImage(image, gts, *kind, a.seed, patch_ptr);
    SaveFten(a.out, r.image);
    if (!a.report.empty()) {
      Json j;
      j["kind"] = a.kind;
      j["seed"] = a.seed;
      Json objects = Json::array();
      for (const PatchResult& p : r.objects) objects.push_back(PatchToJson(p));
      j["objects"] = objects;
      WriteJson(a.report, j);
    }
    return;
  }

  if (a.in_dir.empty() || a.out_dir.empty()) {
    throw Error("batch mode needs both --in-dir and --out-dir");
  }
  if (!fs::is_directory(a.in_dir)) {
    throw IoError("cannot open directory '" + a.in_dir + "'");
  }
  std::vector<fs::path> images;
  for (const fs::directory_entry& e : fs::directory_iterator(a.in_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".ften") {
      images.push_back(e.path());
    }
  }
  std::sort(images.begin(), images.end());
  if (images.empty()) {
    throw FormatError("no .ften images in '" + a.in_dir + "'");
  }
  fs::create_directories(a.out_dir);
  const Rng root(a.seed);
  std::vector<Json> entries(images.size());
  ParallelFor(images.size(), a.jobs, [&](std::size_t i) {
    const fs::path& in = images[i];
    fs::path boxes = in;
    boxes.replace_extension(".csv");
    const std::uint64_t seed = root.Fork(i).NextU64();
    const ImageAttackResult r = AttackImage(
        LoadImage(in.string()), LoadGtBoxes(boxes.string()), *kind, seed,
        patch_ptr);
    SaveFten(fs::path(a.out_dir) / in.filename(), r.image);
    Json j;
    j["image"] = in.filename().string();
    j["boxes"] = boxes.filename().string();
    j["seed"] = seed;
    Json objects = Json::array();
    for (const PatchResult& p : r.objects) objects.push_back(PatchToJson(p));
    j["objects"] = objects;
    entries[i] = std::move(j);
  });
  Json manifest;
  manifest["kind"] = a.kind;
  manifest["seed"] = a.seed;
  manifest["images"] = entries;
  WriteJson((fs::path(a.out_dir) / "manifest.json").string(), manifest);
}

struct SynthArgs {
  std::string variant;
  std::uint64_t seed = 7;
  std::size_t epochs = TrainConfig{}.epochs;
  std::size_t scenes = 1200;
  double lr = TrainConfig{}.lr;
  double scorer_lr = TrainConfig{}.scorer_lr;
  std::string out;
  std::string save_scorer;
};

void RunSynth(const SynthArgs& a) {
  const std::optional<HeadVariant> v = ParseHeadVariant(a.variant);
  if (!v) throw Error("unknown variant '" + a.variant + "'");
  if (a.scenes < 2) throw Error("--scenes must be >= 2");
  if (!(a.lr > 0.0) || !(a.scorer_lr >= 0.0)) {
    throw Error("learning rates must be positive");
  }
  const SynthConfig sc;
  const std::vector<SynthScene> scenes = GenerateScenes(a.seed, a.scenes, sc);
  TrainConfig tc;
  tc.epochs = a.epochs;
  tc.lr = a.lr;
  tc.scorer_lr = a.scorer_lr;
  tc.seed = a.seed;
  const TrainResult r = TrainHead(scenes, *v, tc);
  Json j;
  j["variant"] = a.variant;
  j["seed"] = a.seed;
  j["scenes"] = a.scenes;
  j["epochs"] = a.epochs;
  j["lr"] = a.lr;
  j["scorer_lr"] = a.scorer_lr;
  j.update(TrainResultToJson(r));
  WriteJson(a.out, j);
  if (!a.save_scorer.empty()) SaveFten(a.save_scorer, r.scorer.ToTensor());
}

int Main(int argc, char** argv) {
  CLI::App app{"Context mining operators, checks and experiments", "actx"};
  app.require_subcommand(1);
  const std::size_t default_jobs = DefaultJobs();
  int status = 0;

  RoiArgs pool_args;
  pool_args.jobs = default_jobs;
  auto* roipool = app.add_subcommand("roipool", "RoI max pooling");
  AddRoiOptions(roipool, pool_args, false);
  roipool->callback([&] { RunRoiOp(pool_args, RoiBackbone::kPool); });

  RoiArgs align_args;
  align_args.jobs = default_jobs;
  auto* roialign = app.add_subcommand("roialign", "RoI bilinear align");
  AddRoiOptions(roialign, align_args, false);
  roialign->add_option("--samples", align_args.samples, "samples per bin axis")
      ->capture_default_str();
  roialign->callback([&] { RunRoiOp(align_args, RoiBackbone::kAlign); });

  CtxMineArgs mine_args;
  mine_args.roi.jobs = default_jobs;
  auto* ctxmine = app.add_subcommand(
      "ctxmine", "mine context per RoI; output N x 9D x ph x pw");
  AddRoiOptions(ctxmine, mine_args.roi, true);
  ctxmine->add_option("--samples", mine_args.roi.samples,
                      "samples per bin axis (align)")
      ->capture_default_str();
  ctxmine->add_option("--report", mine_args.report, "selection report (JSON)");
  ctxmine->add_option("--scorer", mine_args.scorer,
                      "scorer weights, length D*ph*pw or +1 with bias last "
                      "(FTEN; default zeros, which selects each anchor)");
  ctxmine->add_option("--gate", mine_args.gate, "score gate strength")
      ->capture_default_str();
  ctxmine->callback([&] { RunCtxMine(mine_args); });

  VariantArgs variant_args;
  variant_args.roi.jobs = default_jobs;
  auto* variant = app.add_subcommand("variant", "fixed context layouts");
  AddRoiOptions(variant, variant_args.roi, true);
  variant->add_option("--variant", variant_args.variant,
                      "none, local, global, neigh4 or neigh8")
      ->required();
  variant->add_option("--samples", variant_args.roi.samples,
                      "samples per bin axis (align)")
      ->capture_default_str();
  variant->callback([&] { RunVariant(variant_args); });

  EnumerateArgs enum_args;
  auto* enumerate =
      app.add_subcommand("enumerate", "candidate context RoIs of one cell");
  enumerate->add_option("--cell", enum_args.cell, "x1,y1,x2,y2")->required();
  enumerate->add_option("--bounds", enum_args.bounds,
                        "W,H of the feature map (enables clipping)");
  enumerate->add_flag("--clipped", enum_args.clipped,
                      "print clipped boxes instead of enumerated ones");
  enumerate->add_option("--out", enum_args.out, "output CSV (default stdout)");
  enumerate->callback([&] { RunEnumerate(enum_args); });

  GradCheckArgs gc_args;
  auto* gradcheck = app.add_subcommand(
      "gradcheck", "central-difference check of a backward pass");
  gradcheck
      ->add_option("--op", gc_args.op,
                   "roipool, roialign, ctxmine, ctxmine-scorer or loss")
      ->required();
  gradcheck->add_option("--seed", gc_args.seed, "problem seed")
      ->capture_default_str();
  gradcheck->add_option("--step", gc_args.step, "difference step h")
      ->capture_default_str();
  gradcheck->add_option("--probes", gc_args.probes,
                        "probed coordinates (0 = all)")
      ->capture_default_str();
  gradcheck->add_option("--tolerance", gc_args.tolerance,
                        "max relative error to pass")
      ->capture_default_str();
  gradcheck->add_option("--out", gc_args.out, "report (JSON, default stdout)");
  gradcheck->callback([&] { status = RunGradCheck(gc_args); });

  NmsArgs nms_args;
  auto* nms = app.add_subcommand("nms", "greedy non-maximum suppression");
  nms->add_option("--rois", nms_args.rois, "scored boxes (CSV)")->required();
  nms->add_option("--iou", nms_args.iou, "IoU threshold")->capture_default_str();
  nms->add_option("--out", nms_args.out, "kept boxes (CSV, default stdout)");
  nms->callback([&] { RunNms(nms_args); });

  AnchorArgs anchor_args;
  auto* anchors = app.add_subcommand("anchors", "RPN anchor grid");
  anchors->add_option("--height", anchor_args.height, "feature map height")
      ->required();
  anchors->add_option("--width", anchor_args.width, "feature map width")
      ->required();
  anchors->add_option("--scales", anchor_args.scales, "comma-separated sides")
      ->capture_default_str();
  anchors->add_option("--ratios", anchor_args.ratios,
                      "comma-separated height/width ratios")
      ->capture_default_str();
  anchors->add_option("--stride", anchor_args.stride, "feature stride")
      ->capture_default_str();
  anchors->add_option("--out", anchor_args.out, "anchors (CSV, default stdout)");
  anchors->callback([&] { RunAnchors(anchor_args); });

  AttackArgs attack_args;
  attack_args.jobs = default_jobs;
  auto* attack = app.add_subcommand("attack", "occlusion patch attacks");
  attack->add_option("--kind", attack_args.kind,
                     "black, flip, random or adversarial")
      ->required();
  attack->add_option("--seed", attack_args.seed, "seed")->capture_default_str();
  attack->add_option("--boxes", attack_args.boxes, "ground-truth boxes (CSV)");
  attack->add_option("--in", attack_args.in, "input image C x H x W (FTEN)");
  attack->add_option("--out", attack_args.out, "attacked image (FTEN)");
  attack->add_option("--patch", attack_args.patch,
                     "adversarial patch C x h x w (FTEN)");
  attack->add_option("--report", attack_args.report, "patch report (JSON)");
  attack->add_option("--in-dir", attack_args.in_dir,
                     "batch: directory of NAME.ften images with NAME.csv boxes");
  attack->add_option("--out-dir", attack_args.out_dir,
                     "batch: output directory (images plus manifest.json)");
  attack->add_option("--jobs", attack_args.jobs, "worker threads (batch)")
      ->check(CLI::PositiveNumber);
  attack->callback([&] { RunAttack(attack_args); });

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth-demo",
                                   "train a head on the synthetic task");
  synth->add_option("--variant", synth_args.variant, "none, neigh8 or mining")
      ->required();
  synth->add_option("--seed", synth_args.seed, "scene and shuffle seed")
      ->capture_default_str();
  synth->add_option("--epochs", synth_args.epochs, "training epochs")
      ->capture_default_str();
  synth->add_option("--scenes", synth_args.scenes, "scene count")
      ->capture_default_str();
  synth->add_option("--lr", synth_args.lr, "head learning rate")
      ->capture_default_str();
  synth->add_option("--scorer-lr", synth_args.scorer_lr, "scorer learning rate")
      ->capture_default_str();
  synth->add_option("--out", synth_args.out, "report (JSON, default stdout)");
  synth->add_option("--save-scorer", synth_args.save_scorer,
                    "write the trained scorer (FTEN)");
  synth->callback([&] { RunSynth(synth_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "actx: usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "actx: error: " << e.what() << "\n";
    return 1;
  }
  return status;
}

}  // namespace
}  // namespace actx

int main(int argc, char** argv) { return actx::Main(argc, argv); }
