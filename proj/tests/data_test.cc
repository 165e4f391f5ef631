/* Copyright 2026 The Swarmtest Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "swarmtest/campaign_config.h"
#include "swarmtest/dataset.h"
#include "swarmtest/png_io.h"
#include "swarmtest/report.h"
#include "test_util.h"

namespace swarmtest {
namespace {

namespace fs = std::filesystem;

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> be32(std::uint32_t v) {
  return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
          static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

// Hand-built IDX pair: `n` images of 2x3 pixels, pixel k of image i = i*6+k.
void write_raw_idx(const fs::path& images, const fs::path& labels, int n,
                   std::uint32_t image_magic = kIdxImagesMagic,
                   int label_count = -1, int drop_bytes = 0) {
  std::vector<std::uint8_t> img;
  for (auto v : {be32(image_magic), be32(n), be32(2), be32(3)}) {
    img.insert(img.end(), v.begin(), v.end());
  }
  for (int i = 0; i < n * 6; ++i) img.push_back(static_cast<std::uint8_t>(i == 0 ? 255 : i));
  img.resize(img.size() - drop_bytes);
  write_bytes(images, img);
  if (label_count < 0) label_count = n;
  std::vector<std::uint8_t> lab;
  for (auto v : {be32(kIdxLabelsMagic), be32(label_count)}) {
    lab.insert(lab.end(), v.begin(), v.end());
  }
  for (int i = 0; i < label_count; ++i) lab.push_back(static_cast<std::uint8_t>(i % 10));
  write_bytes(labels, lab);
}

TEST(Idx, ReadsHandBuiltFile) {
  const auto dir = testing::temp_dir("idx_read");
  write_raw_idx(dir / "img", dir / "lab", 3);
  const auto seeds = ingest_idx(dir / "img", dir / "lab");
  ASSERT_EQ(seeds.size(), 3u);
  EXPECT_EQ(seeds[1].id, "idx-1");
  EXPECT_EQ(seeds[2].label.index, 2);
  EXPECT_EQ(seeds[0].image.height(), 2);
  EXPECT_EQ(seeds[0].image.width(), 3);
  EXPECT_EQ(seeds[0].image.at(0, 0), 1.0f);  // byte 255
  EXPECT_EQ(seeds[1].image.at(1, 2), 11.0f / 255.0f);
}

TEST(Idx, RoundTrip) {
  const auto dir = testing::temp_dir("idx_roundtrip");
  std::mt19937_64 gen(1);
  std::vector<SeedInput> seeds;
  for (int i = 0; i < 7; ++i) {
    std::vector<float> d(20);
    for (float& v : d) v = static_cast<float>(gen() % 256) / 255.0f;
    seeds.push_back({"x", Image(4, 5, 1, d), ClassLabel{static_cast<int>(gen() % 10)}});
  }
  write_idx(dir / "img", dir / "lab", seeds);
  const auto back = ingest_idx(dir / "img", dir / "lab");
  ASSERT_EQ(back.size(), seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    EXPECT_EQ(back[i].image, seeds[i].image);
    EXPECT_EQ(back[i].label, seeds[i].label);
  }
}

TEST(Idx, Errors) {
  const auto dir = testing::temp_dir("idx_errors");
  write_raw_idx(dir / "img", dir / "lab", 3, 0x0804);
  EXPECT_THROW(ingest_idx(dir / "img", dir / "lab"), DatasetError);
  write_raw_idx(dir / "img", dir / "lab", 3, kIdxImagesMagic, 2);
  EXPECT_THROW(ingest_idx(dir / "img", dir / "lab"), DatasetError);
  write_raw_idx(dir / "img", dir / "lab", 3, kIdxImagesMagic, -1, 1);
  EXPECT_THROW(ingest_idx(dir / "img", dir / "lab"), DatasetError);
  write_bytes(dir / "img", {0, 0});
  EXPECT_THROW(ingest_idx(dir / "img", dir / "lab"), DatasetError);
  EXPECT_THROW(ingest_idx(dir / "missing", dir / "lab"), DatasetError);
}

TEST(Sampling, SeededPrefixes) {
  std::vector<SeedInput> all;
  for (int i = 0; i < 50; ++i) {
    all.push_back({"s" + std::to_string(i), Image(1, 1, 1), ClassLabel{0}});
  }
  const auto a = sample_seeds(all, 10, 7);
  const auto b = sample_seeds(all, 30, 7);
  const auto c = sample_seeds(all, 10, 8);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].id, b[i].id);
  std::set<std::string> ids;
  for (const auto& s : b) ids.insert(s.id);
  EXPECT_EQ(ids.size(), 30u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].id != c[i].id;
  EXPECT_TRUE(differs);
  EXPECT_EQ(sample_seeds(all, 50, 1).size(), 50u);
  EXPECT_THROW(sample_seeds(all, 51, 1), DatasetError);
}

TEST(Png, RoundTripAndDirectory) {
  const auto dir = testing::temp_dir("png");
  std::mt19937_64 gen(2);
  std::vector<float> gray(12), rgb(36);
  for (float& v : gray) v = static_cast<float>(gen() % 256) / 255.0f;
  for (float& v : rgb) v = static_cast<float>(gen() % 256) / 255.0f;
  const Image g(3, 4, 1, gray), c(3, 4, 3, rgb);
  write_png(dir / "b.png", g);
  write_png(dir / "a.png", c);
  EXPECT_EQ(read_png(dir / "b.png"), g);
  EXPECT_EQ(read_png(dir / "a.png"), c);
  std::ofstream(dir / "labels.json") << R"({"b.png": 4, "a.png": 7})";
  const auto seeds = ingest_png_dir(dir, dir / "labels.json");
  ASSERT_EQ(seeds.size(), 2u);
  EXPECT_EQ(seeds[0].id, "a.png");
  EXPECT_EQ(seeds[0].label.index, 7);
  EXPECT_EQ(seeds[1].image, g);
  std::ofstream(dir / "bad.json") << R"({"missing.png": 1})";
  EXPECT_THROW(ingest_png_dir(dir, dir / "bad.json"), Error);
  EXPECT_THROW(read_png(dir / "labels.json"), Error);
}

TestReport sample_report() {
  TestReport r;
  r.config.optimizer = OptimizerKind::kMVO;
  r.config.rng_seed = 12;
  r.config.divergence_check = true;
  r.config.bounds.high[4] = 0.07;
  r.seed_count = 3;
  r.admitted_count = 2;
  r.neuron_total = 100;
  r.covered_count = 40;
  r.baseline_ratio = 0.25;
  r.final_ratio = 0.4;
  r.trajectory = {{-1, 0, 0.25}, {0, 0, 0.3}, {0, 1, 0.4}};
  Finding f;
  f.kind = FindingKind::kDivergence;
  f.seed_id = "idx-3";
  f.seed_index = 1;
  f.transform = TransformVector::identity();
  f.transform[TransformParam::kShear] = 0.1234567890123;
  f.path = MutantPath::kShear;
  f.model_label = {3};
  f.reference_label = {5};
  f.ssim = 0.987654321;
  f.noise_seed = 0xfedcba9876543210ULL;
  f.generation = 1;
  f.candidate = 2;
  r.findings = {f};
  r.divergence_count = 1;
  r.evaluations = 20;
  r.duration_seconds = 1.5;
  return r;
}

TEST(Report, JsonRoundTrip) {
  const TestReport r = sample_report();
  const auto j = report_to_json(r);
  EXPECT_EQ(report_to_json(report_from_json(j)), j);
  const Finding back = report_from_json(j).findings[0];
  EXPECT_EQ(back.noise_seed, 0xfedcba9876543210ULL);
  EXPECT_EQ(back.transform, r.findings[0].transform);
  EXPECT_EQ(back.path, MutantPath::kShear);
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_FALSE(report_to_json(r, false).contains("timing"));
  const auto with_campaign = report_to_json(r, true, {{"note", "x"}});
  EXPECT_EQ(with_campaign["campaign"]["note"], "x");
}

TEST(Report, WriteAndRead) {
  const auto dir = testing::temp_dir("report");
  write_report(sample_report(), dir / "r.json");
  EXPECT_EQ(report_to_json(report_from_json(read_json_file(dir / "r.json"))),
            report_to_json(sample_report()));
  EXPECT_THROW(read_json_file(dir / "missing.json"), Error);
}

TEST(Report, ConfigDefaultsAndErrors) {
  const SearchConfig d = config_from_json(nlohmann::ordered_json::object());
  EXPECT_EQ(config_to_json(d), config_to_json(SearchConfig{}));
  const auto cfg = config_from_json({{"optimizer", "gwo"}, {"pop_size", 6}});
  EXPECT_EQ(cfg.optimizer, OptimizerKind::kGWO);
  EXPECT_EQ(cfg.pop_size, 6);
  EXPECT_THROW(config_from_json({{"optimizer", "nope"}}), Error);
  EXPECT_THROW(config_from_json({{"pop_size", 1}}), Error);
  EXPECT_THROW(config_from_json({{"pop_size", "ten"}}), Error);
}

TEST(Campaign, BundledConfigResolvesPaths) {
  const auto cfg =
      load_campaign_config(testing::bundled_data_dir() / "campaigns/mnist_small.json");
  EXPECT_TRUE(fs::exists(cfg.images));
  EXPECT_TRUE(fs::exists(cfg.model.weights));
  EXPECT_EQ(cfg.sampling_seed, 2026u);
  EXPECT_EQ(cfg.search.optimizer, OptimizerKind::kCS);
}

TEST(Campaign, MissingFilesAndBadFields) {
  const auto dir = testing::temp_dir("campaign");
  const nlohmann::ordered_json base = {
      {"dataset", {{"format", "idx"}, {"images", "img"}, {"labels", "lab"}}},
      {"model", {{"manifest", "m.json"}, {"weights", "m.bin"}}},
      {"output_dir", "out"}};
  EXPECT_THROW(campaign_config_from_json(base, dir), ConfigError);
  for (const char* f : {"img", "lab", "m.json", "m.bin"}) std::ofstream(dir / f) << "x";
  const auto cfg = campaign_config_from_json(base, dir);
  EXPECT_EQ(cfg.images, dir / "img");
  EXPECT_EQ(cfg.output_dir, dir / "out");
  auto bad = base;
  bad["dataset"]["format"] = "tfrecord";
  EXPECT_THROW(campaign_config_from_json(bad, dir), ConfigError);
}

}  // namespace
}  // namespace swarmtest
