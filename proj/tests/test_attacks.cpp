#include <doctest.h>

#include "support/synth.hpp"
#include "trlg/attacks.hpp"

using namespace trlg;

TEST_CASE("rate zero is the identity with an empty mask") {
  RgbImage img = testsupport::cloud_image(64, 64, 3, true);
  AttackSpec spec;
  spec.kind = AttackKind::splice;
  spec.rate = 0.0;
  AttackResult res = apply_attack(img, spec);
  CHECK(res.image == img);
  for (auto m : res.mask.data) CHECK(m == 0);
}

TEST_CASE("protocol attack preserves both lsb planes everywhere") {
  RgbImage img = testsupport::cloud_image(64, 64, 4, true);
  RgbImage donor = testsupport::cloud_image(64, 64, 99, true);
  AttackSpec spec;
  spec.kind = AttackKind::protocol;
  spec.rate = 0.5;
  AttackResult res = apply_attack(img, spec, &donor);
  for (std::size_t k = 0; k < img.planes.size(); ++k)
    for (std::size_t i = 0; i < img.planes[k].size(); ++i)
      CHECK((res.image.planes[k].samples[i] & 3) == (img.planes[k].samples[i] & 3));
}

TEST_CASE("center 50% splice covers the expected block area") {
  RgbImage img = testsupport::cloud_image(512, 512, 5, false);
  AttackSpec spec;
  spec.kind = AttackKind::splice;
  spec.rate = 0.5;
  spec.rng_seed = 4;
  AttackResult res = apply_attack(img, spec);
  std::size_t marked = 0;
  for (auto m : res.mask.data) marked += m;
  // 0.5 * 65536 blocks, snapped outward; seeded noise rarely equals a sample
  double fraction = static_cast<double>(marked) / res.mask.size();
  CHECK(fraction >= 0.499);
  CHECK(fraction <= 0.515);
  // the mask is centered
  CHECK(res.mask.at(128, 128) == 1);
  CHECK(res.mask.at(4, 4) == 0);
  CHECK(res.mask.at(251, 251) == 0);
}

TEST_CASE("ground truth marks exactly the modified blocks") {
  RgbImage img = testsupport::cloud_image(64, 64, 6, false);
  AttackSpec spec;
  spec.kind = AttackKind::copy_move;
  spec.rate = 0.25;
  AttackResult res = apply_attack(img, spec);
  for (int by = 0; by < res.mask.height; ++by)
    for (int bx = 0; bx < res.mask.width; ++bx) {
      bool changed = false;
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx)
          changed |= res.image.planes[0].at(2 * by + dy, 2 * bx + dx) !=
                     img.planes[0].at(2 * by + dy, 2 * bx + dx);
      CHECK(static_cast<bool>(res.mask.at(by, bx)) == changed);
    }
}

TEST_CASE("attacks are reproducible and donor-validated") {
  RgbImage img = testsupport::cloud_image(64, 64, 7, true);
  AttackSpec spec;
  spec.kind = AttackKind::splice;
  spec.rate = 0.3;
  spec.rng_seed = 42;
  AttackResult a = apply_attack(img, spec);
  AttackResult b = apply_attack(img, spec);
  CHECK(a.image == b.image);

  spec.kind = AttackKind::collage;
  CHECK_THROWS_AS(apply_attack(img, spec), image_error);
  RgbImage small = testsupport::cloud_image(32, 32, 8, true);
  CHECK_THROWS_AS(apply_attack(img, spec, &small), image_error);
}

TEST_CASE("edge sweeps fill from the named edge") {
  RgbImage img = testsupport::cloud_image(128, 128, 9, false);
  RgbImage donor = testsupport::cloud_image(128, 128, 10, false);
  AttackSpec spec;
  spec.kind = AttackKind::collage;
  spec.rate = 0.25;
  spec.region = AttackRegion::left_to_right;
  AttackResult res = apply_attack(img, spec, &donor);
  CHECK(res.mask.at(0, 0) == 1);
  CHECK(res.mask.at(0, res.mask.width - 1) == 0);
  spec.region = AttackRegion::up_to_bottom;
  res = apply_attack(img, spec, &donor);
  CHECK(res.mask.at(0, 0) == 1);
  CHECK(res.mask.at(res.mask.height - 1, 0) == 0);
}

TEST_CASE("name parsing") {
  CHECK(attack_kind_from_name("vq") == AttackKind::vector_quantization);
  CHECK(attack_kind_from_name("copy-move") == AttackKind::copy_move);
  CHECK_THROWS_AS(attack_kind_from_name("noise"), image_error);
  CHECK(attack_region_from_name("ltr") == AttackRegion::left_to_right);
  CHECK_THROWS_AS(attack_region_from_name("middle"), image_error);
}
