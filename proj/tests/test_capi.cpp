// Exercises the shared library through its C surface only.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"

#include "activech/activech.h"

namespace {

const char* kConfig = R"(
[domain]
dim = 2

[physics]
beta = 0.1
s_plus = -8
s_minus = 8

[discretization]
epsilon = 1/(8*pi)
tau = 1e-3
T = 0.005
)";

void collect(const char* line, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(line); }

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and command list") {
    CHECK(std::strlen(ach_version()) > 0);
    REQUIRE(ach_command_count() == 7);
    CHECK(std::string(ach_command_name(0)) == "simulate");
    CHECK(ach_command_name(7) == nullptr);
  }

  TEST_CASE("config handle") {
    ach_config* cfg = nullptr;
    REQUIRE(ach_config_parse(kConfig, &cfg) == ACH_OK);
    char buf[64];
    REQUIRE(ach_config_get(cfg, "physics.rho_plus", buf, sizeof buf) == ACH_OK);
    CHECK(std::string(buf) == "1");
    CHECK(ach_config_set(cfg, "physics.beta", "0.2") == ACH_OK);
    REQUIRE(ach_config_get(cfg, "physics.beta", buf, sizeof buf) == ACH_OK);
    CHECK(std::string(buf) == "0.20000000000000001");
    CHECK(ach_config_set(cfg, "physics.k_plus", "1") == ACH_ERR_CONFIG);
    CHECK(std::string(ach_last_error()).find("k_plus") != std::string::npos);
    // The rejected override is not kept.
    CHECK(ach_config_set(cfg, "physics.m_plus", "2") == ACH_OK);
    CHECK(ach_config_get(cfg, "physics.beta", buf, 2) == ACH_ERR_INVALID_ARGUMENT);
    CHECK(ach_config_get(cfg, "nosuch", buf, sizeof buf) == ACH_ERR_CONFIG);
    ach_config_free(cfg);

    CHECK(ach_config_parse("[domain]\ndim = 7\n", &cfg) == ACH_ERR_CONFIG);
    CHECK(cfg == nullptr);
    CHECK(ach_config_load("/nonexistent/activech.cfg", &cfg) == ACH_ERR_IO);
    CHECK(ach_config_parse(nullptr, &cfg) == ACH_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("running a command with an emitter") {
    const auto dir = std::filesystem::temp_directory_path() / "activech_capi_stability";
    std::filesystem::remove_all(dir);
    ach_config* cfg = nullptr;
    REQUIRE(ach_config_parse(kConfig, &cfg) == ACH_OK);
    REQUIRE(ach_config_set(cfg, "output.dir", dir.c_str()) == ACH_OK);
    REQUIRE(ach_config_set(cfg, "stability.q", "0.5") == ACH_OK);
    std::vector<std::string> lines;
    int verdict = -1;
    REQUIRE(ach_run_command("stability", cfg, collect, &lines, &verdict) == ACH_OK);
    CHECK(verdict == 0);
    REQUIRE_FALSE(lines.empty());
    CHECK(lines.back().find("|l|^2 = 4") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "stability.csv"));
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CHECK(ach_run_command("bogus", cfg, nullptr, nullptr, &verdict) == ACH_ERR_CONFIG);
    ach_config_free(cfg);
  }

  TEST_CASE("stepwise simulation") {
    ach_config* cfg = nullptr;
    REQUIRE(ach_config_parse(kConfig, &cfg) == ACH_OK);
    ach_simulation* sim = nullptr;
    REQUIRE(ach_simulation_create(cfg, &sim) == ACH_OK);
    ach_config_free(cfg);
    double m0 = 0.0, m1 = 0.0, t = -1.0;
    REQUIRE(ach_simulation_mass(sim, &m0) == ACH_OK);
    REQUIRE(ach_simulation_advance(sim, 3) == ACH_OK);
    REQUIRE(ach_simulation_time(sim, &t) == ACH_OK);
    CHECK(t == doctest::Approx(3e-3));
    REQUIRE(ach_simulation_mass(sim, &m1) == ACH_OK);
    // S+- = -+8 balance on the centred front: the mass stays put.
    CHECK(std::abs(m1 - m0) <= 1e-8);
    size_t n = 0;
    REQUIRE(ach_simulation_node_count(sim, &n) == ACH_OK);
    CHECK(n == 65 * 65);
    std::vector<double> phi(n);
    CHECK(ach_simulation_copy_phi(sim, phi.data(), n - 1) == ACH_ERR_INVALID_ARGUMENT);
    REQUIRE(ach_simulation_copy_phi(sim, phi.data(), n) == ACH_OK);
    // Phase +1 on the left, -1 on the right, shifted off the wells by the sources.
    CHECK(phi.front() > 0.9);
    CHECK(phi.back() < -0.9);
    CHECK(ach_simulation_advance(sim, -1) == ACH_ERR_INVALID_ARGUMENT);
    ach_simulation_free(sim);
    CHECK(ach_simulation_advance(nullptr, 1) == ACH_ERR_INVALID_ARGUMENT);
  }
}
