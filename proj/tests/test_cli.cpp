#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "csd/config.hpp"
#include "csd/descriptor.hpp"
#include "csd/match.hpp"
#include "csd/ppm.hpp"
#include "subprocess.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = CSD_CLI_PATH;

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "csd_cli_test";
  fs::create_directories(dir);
  return dir;
}

csd::RgbImage random_image(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  csd::RgbImage img(w, h);
  for (auto& p : img.pixels()) {
    p = {static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
         static_cast<std::uint8_t>(byte(rng))};
  }
  return img;
}

}  // namespace

TEST_CASE("extract on a uniform red frame writes one full-scale byte") {
  const auto dir = work_dir();
  const auto ppm = dir / "red.ppm";
  const auto out = dir / "red.csd";
  csd::save_ppm(csd::RgbImage(64, 64, csd::RgbPixel{255, 0, 0}), ppm);

  const auto r = run_command(kCli + " extract --in " + ppm.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("bins=256") != std::string::npos);
  CHECK(r.out.find("nonzero=1") != std::string::npos);

  const auto d = csd::load_descriptor(out);
  int nonzero = 0;
  for (auto v : d.values) {
    if (v != 0) {
      ++nonzero;
      CHECK(v == 255);
    }
  }
  CHECK(nonzero == 1);
}

TEST_CASE("extract records p=0 for the 120x80 frame") {
  const auto dir = work_dir();
  const auto ppm = dir / "small.ppm";
  const auto out = dir / "small.csd";
  csd::save_ppm(random_image(120, 80, 5), ppm);

  const auto r = run_command(kCli + " extract --in " + ppm.string() + " --out " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find(" p=0 ") != std::string::npos);

  std::ifstream in(out, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 8 + 256);
  CHECK(bytes[7] == 0);
}

TEST_CASE("extract failures exit nonzero and name the path") {
  const auto r = run_command(kCli + " extract --in /nonexistent/x.ppm --out /tmp/x.csd");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("/nonexistent/x.ppm") != std::string::npos);
}

TEST_CASE("json export is accepted and parses back") {
  const auto dir = work_dir();
  const auto ppm = dir / "json_src.ppm";
  const auto out = dir / "json_out.json";
  csd::save_ppm(random_image(32, 32, 6), ppm);

  const auto r = run_command(kCli + " extract --in " + ppm.string() + " --out " +
                             out.string() + " --bins 64 --json");
  REQUIRE(r.exit_code == 0);
  const auto d = csd::descriptor_from_json(slurp(out.string()));
  CHECK(d.bins == 64);
  CHECK(d == csd::extract(csd::load_ppm(ppm), 64));
}

TEST_CASE("match of a file against itself prints zero") {
  const auto dir = work_dir();
  const auto ppm = dir / "m.ppm";
  const auto csd_file = dir / "m.csd";
  csd::save_ppm(random_image(48, 48, 7), ppm);
  REQUIRE(run_command(kCli + " extract --in " + ppm.string() + " --out " + csd_file.string())
              .exit_code == 0);

  const auto r = run_command(kCli + " match " + csd_file.string() + " " + csd_file.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("distance=0 ") != std::string::npos);
  CHECK(r.out.find("resized=no") != std::string::npos);
}

TEST_CASE("match agrees with the library on a known fixture pair") {
  const auto dir = work_dir();
  const auto a_img = random_image(40, 40, 8);
  const auto b_img = random_image(40, 40, 9);
  const auto a_d = csd::extract(a_img, 256);
  const auto b_d = csd::extract(b_img, 256);
  const int expected = csd::l1_distance(a_d, b_d).distance;

  csd::save_descriptor(a_d, dir / "a.csd");
  csd::save_descriptor(b_d, dir / "b.csd");
  const auto r =
      run_command(kCli + " match " + (dir / "a.csd").string() + " " + (dir / "b.csd").string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("distance=" + std::to_string(expected) + " ") != std::string::npos);
}

TEST_CASE("match explains bin mismatches and honors --resize-to") {
  const auto dir = work_dir();
  const auto img = random_image(40, 40, 10);
  csd::save_descriptor(csd::extract(img, 256), dir / "m256.csd");
  csd::save_descriptor(csd::extract(img, 128), dir / "m128.csd");

  const auto bad =
      run_command(kCli + " match " + (dir / "m256.csd").string() + " " + (dir / "m128.csd").string());
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("--resize-to") != std::string::npos);

  const auto ok = run_command(kCli + " match " + (dir / "m256.csd").string() + " " +
                              (dir / "m128.csd").string() + " --resize-to 128");
  REQUIRE(ok.exit_code == 0);
  CHECK(ok.out.find("bins=128") != std::string::npos);
  CHECK(ok.out.find("resized=yes") != std::string::npos);

  const auto upsize = run_command(kCli + " match " + (dir / "m256.csd").string() + " " +
                                  (dir / "m128.csd").string() + " --resize-to 256");
  CHECK(upsize.exit_code == 2);
  CHECK(upsize.err.find("upsize") != std::string::npos);
}

TEST_CASE("corrupted descriptor files are reported with their offset") {
  const auto dir = work_dir();
  std::ofstream(dir / "junk.csd", std::ios::binary) << "XSD1junkjunkjunk";
  const auto r =
      run_command(kCli + " match " + (dir / "junk.csd").string() + " " + (dir / "junk.csd").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("offset 0") != std::string::npos);
}

TEST_CASE("index build and query round-trip deterministically") {
  const auto dir = work_dir();
  const auto corpus = dir / "corpus";
  fs::remove_all(corpus);
  fs::create_directories(corpus);
  for (int i = 0; i < 10; ++i) {
    csd::save_ppm(random_image(32, 32, 100 + i),
                  corpus / ("img" + std::to_string(i) + ".ppm"));
  }

  const auto idx1 = dir / "corpus1.idx";
  const auto idx2 = dir / "corpus2.idx";
  REQUIRE(run_command(kCli + " index build --dir " + corpus.string() + " --out " + idx1.string())
              .exit_code == 0);
  REQUIRE(run_command(kCli + " index build --dir " + corpus.string() + " --out " + idx2.string())
              .exit_code == 0);
  CHECK(slurp(idx1.string()) == slurp(idx2.string()));

  const auto q1 = run_command(kCli + " index query --index " + idx1.string() + " --image " +
                              (corpus / "img3.ppm").string() + " --top 5");
  REQUIRE(q1.exit_code == 0);
  CHECK(q1.out.find("1\timg3.ppm\t0") == 0);

  const auto q2 = run_command(kCli + " index query --index " + idx1.string() + " --image " +
                              (corpus / "img3.ppm").string() + " --top 5");
  CHECK(q1.out == q2.out);

  const auto top3 = run_command(kCli + " index query --index " + idx1.string() + " --image " +
                                (corpus / "img3.ppm").string() + " --top 3");
  int rows = 0;
  for (char c : top3.out) rows += c == '\n' ? 1 : 0;
  CHECK(rows == 3);
}

TEST_CASE("bench emits a deterministic digest and separates timing onto stderr") {
  const auto cmd = kCli + " bench --width 64 --height 48 --frames 5 --mode incremental --seed 11";
  const auto r1 = run_command(cmd);
  const auto r2 = run_command(cmd);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out.find("digest=") != std::string::npos);
  CHECK(r1.out.find("mean_ms") == std::string::npos);  // timing lives on stderr
  CHECK(r1.err.find("mean_ms=") != std::string::npos);
  CHECK((r1.err.find("PASS") != std::string::npos || r1.err.find("FAIL") != std::string::npos));
}

TEST_CASE("bench digests agree between serial and single-bank banked modes") {
  const auto serial = run_command(
      kCli + " bench --width 64 --height 48 --frames 4 --mode serial --seed 21");
  const auto banked = run_command(
      kCli + " bench --width 64 --height 48 --frames 4 --mode banked --banks 1 --seed 21");
  const auto banked10 = run_command(
      kCli + " bench --width 64 --height 48 --frames 4 --mode banked --banks 10 --seed 21");
  REQUIRE(serial.exit_code == 0);
  const auto digest_of = [](const std::string& out) {
    const auto at = out.find("digest=");
    return out.substr(at, 23);
  };
  CHECK(digest_of(serial.out) == digest_of(banked.out));
  CHECK(digest_of(serial.out) == digest_of(banked10.out));
}

TEST_CASE("simulate prints the plan table with the halo identity") {
  const auto r = run_command(kCli + " simulate --width 120 --height 80 --banks 10");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("8249") != std::string::npos);
  CHECK(r.out.find("halo check") != std::string::npos);
  CHECK(r.out.find("-> ok") != std::string::npos);

  const auto single = run_command(kCli + " simulate --width 64 --height 64 --banks 1");
  REQUIRE(single.exit_code == 0);
  int data_rows = 0;
  bool in_table = false;
  std::istringstream lines(single.out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("bank", 0) == 0) {
      in_table = true;
      continue;
    }
    if (in_table && line.rfind("total", 0) == 0) break;
    if (in_table && !line.empty()) ++data_rows;
  }
  CHECK(data_rows == 1);

  const auto js = run_command(kCli + " simulate --width 120 --height 80 --banks 10 --json");
  REQUIRE(js.exit_code == 0);
  CHECK(js.out.find("\"owned_positions\": 8249") != std::string::npos);
}

TEST_CASE("inconsistent config files are refused citing the subspace sums") {
  const auto dir = work_dir();
  const auto cfg = dir / "bad_table.json";
  std::ofstream(cfg) << R"({"bins": 64, "levels": [[1,8],[8,4],[4,4],[8,4],[8,2]]})";

  const auto ppm = dir / "cfg_in.ppm";
  csd::save_ppm(random_image(32, 32, 12), ppm);

  const auto r = run_command(kCli + " extract --in " + ppm.string() + " --out " +
                             (dir / "cfg_out.csd").string() + " --config " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("104") != std::string::npos);

  // the same config through the environment variable
  const auto env = run_command("CSD_CONFIG=" + cfg.string() + " " + kCli + " extract --in " +
                               ppm.string() + " --out " + (dir / "cfg_out.csd").string());
  CHECK(env.exit_code == 2);

  // a valid config through the environment variable works
  const auto good = dir / "good_table.json";
  std::ofstream(good) << R"({"bins": 64, "levels": [[1,8],[4,4],[4,4],[8,2],[8,1]]})";
  const auto ok = run_command("CSD_CONFIG=" + good.string() + " " + kCli + " extract --in " +
                              ppm.string() + " --out " + (dir / "cfg_out.csd").string());
  CHECK(ok.exit_code == 0);
}

TEST_CASE("matching descriptors of different scales warns but succeeds") {
  const auto dir = work_dir();
  csd::save_descriptor(csd::extract(random_image(120, 80, 13), 256), dir / "p0.csd");
  csd::save_descriptor(csd::extract(random_image(640, 480, 14), 256), dir / "p1.csd");

  const auto r =
      run_command(kCli + " match " + (dir / "p0.csd").string() + " " + (dir / "p1.csd").string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("distance=") != std::string::npos);
  CHECK(r.err.find("scale") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_command(kCli + " no-such-command").exit_code == 1);
  CHECK(run_command(kCli + " extract --in only-half").exit_code == 1);
  CHECK(run_command(kCli + " bench --mode nonsense").exit_code == 1);
  CHECK(run_command(kCli).exit_code == 1);
}
