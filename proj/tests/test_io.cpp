#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "activech/error.hpp"
#include "activech/fem/simulation.hpp"
#include "activech/io/checkpoint.hpp"
#include "activech/io/commands.hpp"
#include "activech/io/config.hpp"
#include "activech/io/manifest.hpp"
#include "activech/io/writers.hpp"
#include "activech/model/sharp_params.hpp"

using namespace activech;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("activech_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kMinimal = R"(
[discretization]
epsilon = 1/(16*pi)

[physics]
beta = 0.1
s_plus = -1
s_minus = 4
)";

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("number expressions") {
    CHECK(io::parse_number("1/(16*pi)") == 1.0 / (16 * std::numbers::pi));
    CHECK(io::parse_number("1/(4pi)") == 1.0 / (4 * std::numbers::pi));
    CHECK(io::parse_number("-2.5e-3") == -2.5e-3);
    CHECK(io::parse_number(" (1 + 2) * 3 ") == 9.0);
    CHECK_THROWS_AS(io::parse_number("1/"), ConfigError);
    CHECK_THROWS_AS(io::parse_number("pie"), ConfigError);
  }

  TEST_CASE("minimal config applies the defaults") {
    const auto cfg = io::parse_config(kMinimal);
    const auto p = io::phase_field_params(cfg);
    CHECK(p.epsilon == 1.0 / (16 * std::numbers::pi));
    CHECK(p.mobility.m_plus == 1.0);
    CHECK(p.mobility.m_minus == 1.0);
    CHECK(p.reaction.r_c == 1.0);
    CHECK(p.reaction.l_coef == 0.0);
    // rho+- = 1: K+- = beta psi''(+-1).
    CHECK(p.reaction.k_plus == doctest::Approx(0.2));
    CHECK(p.reaction.k_minus == doctest::Approx(0.2));
    CHECK(io::resolved_mesh_size(cfg) == 1.0 / 128);
  }

  TEST_CASE("rho and K are mutually exclusive") {
    const std::string text = std::string(kMinimal) + "rho_plus = 1\nrho_minus = 1\n";
    CHECK_NOTHROW(io::parse_config(text));
    CHECK_THROWS_AS(io::parse_config(text, {{"physics.k_plus", "0.2"}}), ConfigError);
    CHECK_THROWS_AS(io::parse_config(std::string(kMinimal) + "k_plus = 1\n"), ConfigError);
  }

  TEST_CASE("errors name the field and the line") {
    const std::string text = std::string(kMinimal) + "bta = 1\n";
    try {
      io::parse_config(text);
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("physics.bta") != std::string::npos);
      CHECK(msg.find("line 9") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_config(kMinimal, {{"discretization.tau", "fast"}}), ConfigError);
    CHECK_THROWS_AS(io::parse_config(kMinimal, {{"domain.dim", "4"}}), ConfigError);
  }

  TEST_CASE("overrides win over the document") {
    const auto cfg = io::parse_config(kMinimal, {{"physics.beta", "0.5"}});
    CHECK(*cfg.physics.beta == 0.5);
  }

  TEST_CASE("empty diagnostics give the header only") {
    const auto csv = io::diagnostics_csv({}, -1);
    CHECK(csv == "t,mass,energy,q_h\n");
    CHECK(io::diagnostics_csv({}, 2) == "t,mass,energy,q_h,mode_0,mode_1,mode_2\n");
  }

  TEST_CASE("VTK point data covers every node") {
    auto mesh = std::make_shared<const fem::StructuredMesh>(fem::StructuredMesh::build(2, {2.0, 1.0}, 0.25));
    const auto phi = fem::NodalField::zeros(mesh);
    const auto vtk = io::vtk_snapshot(phi, phi, 0.0);
    CHECK(vtk.find("DIMENSIONS 9 5 1") != std::string::npos);
    CHECK(vtk.find("POINT_DATA 45") != std::string::npos);
    CHECK(io::snapshot_name(42) == "snap_000042.vtk");
  }

  TEST_CASE("double formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
      CHECK(std::stod(io::format_double(v)) == v);
    }
    CHECK(io::format_double(NAN) == "nan");
  }

  TEST_CASE("checkpoint round-trip is bitwise") {
    model::PhaseFieldParams p;
    p.beta = 0.1;
    p.epsilon = 1.0 / (8 * std::numbers::pi);
    p.reaction = model::reaction_from_rho(0.1, p.potential, -1, 4, 1, 0.1);
    fem::SolverConfig cfg;
    const auto rec = fem::run_simulation(p, {2, {1.0, 1.0}, 1.0 / 32}, fem::Disk{}, cfg, 3e-3, {});
    const auto dir = scratch("ckpt");
    const auto path = (dir / "state.bin").string();
    io::write_checkpoint(path, rec.final_state);
    const auto back = io::read_checkpoint(path);
    CHECK(back.t == rec.final_state.t);
    CHECK(back.step == rec.final_state.step);
    REQUIRE(back.phi.size() == rec.final_state.phi.size());
    CHECK(std::memcmp(back.phi.values().data(), rec.final_state.phi.values().data(),
                      sizeof(double) * back.phi.size()) == 0);
    CHECK(std::memcmp(back.mu.values().data(), rec.final_state.mu.values().data(),
                      sizeof(double) * back.mu.size()) == 0);
    auto bytes = io::encode_checkpoint(rec.final_state);
    bytes[0] = 'X';
    CHECK_THROWS_AS(io::decode_checkpoint(bytes), IoError);
    CHECK_THROWS_AS(io::decode_checkpoint(bytes.substr(0, 70)), IoError);
  }

  TEST_CASE("manifest exists before any compute") {
    const auto dir = scratch("manifest");
    const auto cfg = io::parse_config(kMinimal);
    const auto path = (dir / "manifest.json").string();
    {
      io::Manifest m(path, "simulate", cfg);
      const auto text = io::read_file(path);
      CHECK(text.find("\"status\": \"running\"") != std::string::npos);
      CHECK(text.find("end_time") == std::string::npos);
      m.finish(true);
    }
    CHECK(io::read_file(path).find("end_time") != std::string::npos);
  }

  TEST_CASE("same config and seed give byte-identical diagnostics") {
    const std::string text = std::string(kMinimal) +
                             "[domain]\ndim = 2\n[initial]\nkind = flat_front\nseed = 9\nrandom_modes = 4\n"
                             "random_bound = 0.02\n[output]\nstride = 1\nvtk = false\nmode_lmax = 4\n";
    std::string first;
    for (const char* name : {"det_a", "det_b"}) {
      const auto dir = scratch(name);
      const auto cfg = io::parse_config(text, {{"discretization.T", "0.01"},
                                               {"discretization.epsilon", "1/(8*pi)"},
                                               {"output.dir", dir.string()}});
      CHECK(io::run_command("simulate", cfg, [](const std::string&) {}) == 0);
      const auto csv = io::read_file((dir / "diag.csv").string());
      CHECK(count_lines(csv) == 12);
      if (first.empty()) first = csv;
      else CHECK(csv == first);
      CHECK(fs::exists(dir / "snap_000000.vtk") == false);
      CHECK(fs::exists(dir / "checkpoint.bin"));
    }
  }

  TEST_CASE("restart continues from a checkpoint") {
    const auto dir = scratch("restart");
    const auto base = io::parse_config(kMinimal, {{"discretization.epsilon", "1/(8*pi)"},
                                                  {"discretization.T", "0.004"},
                                                  {"output.vtk", "false"},
                                                  {"output.dir", (dir / "a").string()}});
    REQUIRE(io::run_command("simulate", base, [](const std::string&) {}) == 0);
    auto cont = base;
    cont.disc.t_end = 0.008;
    cont.output.dir = (dir / "b").string();
    cont.output.restart = (dir / "a" / "checkpoint.bin").string();
    REQUIRE(io::run_command("simulate", cont, [](const std::string&) {}) == 0);
    auto whole = base;
    whole.disc.t_end = 0.008;
    whole.output.dir = (dir / "c").string();
    REQUIRE(io::run_command("simulate", whole, [](const std::string&) {}) == 0);
    const auto b = io::read_checkpoint((dir / "b" / "checkpoint.bin").string());
    const auto c = io::read_checkpoint((dir / "c" / "checkpoint.bin").string());
    CHECK(b.step == c.step);
    CHECK((b.phi.values() - c.phi.values()).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("unknown commands and failed runs") {
    const auto dir = scratch("fail");
    auto cfg = io::parse_config(kMinimal, {{"output.dir", dir.string()}});
    CHECK_THROWS_AS(io::run_command("bogus", cfg, [](const std::string&) {}), ConfigError);
    cfg.physics.beta.reset();
    CHECK_THROWS_AS(io::run_command("simulate", cfg, [](const std::string&) {}), ConfigError);
    const auto manifest = io::read_file((dir / "manifest.json").string());
    CHECK(manifest.find("\"status\": \"failed\"") != std::string::npos);
  }

  TEST_CASE("ACTIVE_CH_THREADS caps the thread count") {
    setenv("ACTIVE_CH_THREADS", "2", 1);
    CHECK(io::thread_cap(8) == 2);
    CHECK(io::thread_cap(1) == 1);
    setenv("ACTIVE_CH_THREADS", "junk", 1);
    CHECK(io::thread_cap(8) == 8);
    unsetenv("ACTIVE_CH_THREADS");
    CHECK(io::thread_cap(0) == 1);
  }
}
