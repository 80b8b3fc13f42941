// SPDX-License-Identifier: Apache-2.0
//
// risisac - secure full-duplex RIS-assisted ISAC simulation and optimization
// Copyright (C) 2026 The risisac authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "catch_amalgamated.hpp"

#include "risisac/scenario.hpp"

#include <cmath>
#include <cstring>
#include <random>

using namespace risisac;
using Catch::Approx;

TEST_CASE("default scenario dimensions")
{
    auto cfg = default_scenario();
    CHECK(cfg.N() == 25);
    CHECK(cfg.array.n_ris_h == 5);
    CHECK(cfg.array.n_ris_v == 5);
    CHECK(cfg.K() == 3);
    CHECK(cfg.J() == 2);
    CHECK(cfg.L() == 2);
    CHECK(cfg.array.n_tx == 8);
    CHECK(cfg.array.n_rx == 8);
    CHECK(cfg.array.wavelength == 0.085);
    CHECK(cfg.layout.ris.distance_from_bs == 22.0);
    CHECK(cfg.thresholds.p_max_dbm == 25.0);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("two DL users sit on the interval endpoints")
{
    auto az = equidistant_azimuths(2, -15.0, 5.0);
    REQUIRE(az.size() == 2);
    CHECK(az[0] == -15.0);
    CHECK(az[1] == 5.0);

    auto cfg = default_scenario();
    CHECK(cfg.layout.dl_users[0].azimuth == -15.0);
    CHECK(cfg.layout.dl_users[1].azimuth == 5.0);
}

TEST_CASE("equidistant gaps are equal")
{
    for (int n : {3, 4, 7, 12})
    {
        auto az = equidistant_azimuths(n, -33.0, 71.5);
        REQUIRE(static_cast<int>(az.size()) == n);
        CHECK(az.front() == Approx(-33.0));
        CHECK(az.back() == Approx(71.5));
        double gap = az[1] - az[0];
        for (int i = 2; i < n; ++i)
            CHECK(az[i] - az[i - 1] == Approx(gap).epsilon(1e-12));
    }
    auto one = equidistant_azimuths(1, 10.0, 20.0);
    CHECK(one == std::vector<double>{15.0});
}

TEST_CASE("RIS position is the polar-to-Cartesian image")
{
    auto cfg = default_scenario();
    auto g = derive_geometry(cfg);
    double a = -40.0 * M_PI / 180.0;
    CHECK(g.ris.x() == Approx(22.0 * std::cos(a)).epsilon(1e-14));
    CHECK(g.ris.y() == Approx(22.0 * std::sin(a)).epsilon(1e-14));
    CHECK(g.d_br == Approx(22.0).epsilon(1e-14));
}

TEST_CASE("RIS-to-user distance matches two-point formula")
{
    auto cfg = default_scenario();
    auto g = derive_geometry(cfg);
    double ra = -40.0 * M_PI / 180.0, ua = cfg.layout.dl_users[0].azimuth * M_PI / 180.0;
    double rx = 22.0 * std::cos(ra), ry = 22.0 * std::sin(ra);
    double ux = cfg.layout.dl_users[0].distance * std::cos(ua), uy = cfg.layout.dl_users[0].distance * std::sin(ua);
    double d = std::sqrt((ux - rx) * (ux - rx) + (uy - ry) * (uy - ry));
    CHECK(std::abs(g.d_ru[0] - d) <= 1e-12 * d);
}

TEST_CASE("node on the RIS is degenerate")
{
    auto cfg = default_scenario();
    cfg.layout.eves[1] = {22.0, -40.0, 1.0};
    CHECK_THROWS_AS(derive_geometry(cfg), DegenerateGeometry);
}

TEST_CASE("geometry is deterministic and seed independent")
{
    auto cfg = default_scenario();
    auto a = derive_geometry(cfg);
    cfg.budgets.seed = 12345;
    auto b = derive_geometry(cfg);
    CHECK(a.d_ru == b.d_ru);
    CHECK(a.phi_re == b.phi_re);
    CHECK(a.d_vu == b.d_vu);
    CHECK(a.phi_rb == b.phi_rb);
}

TEST_CASE("thermal noise power")
{
    LinkBudget b;
    b.noise.noise_figure = 0.0;
    b.noise.temperature = 298.0;
    b.noise.bandwidth = 5e7;
    double n0 = noise_power(b);
    CHECK(n0 == Approx(1.380649e-23 * 298.0 * 5e7).epsilon(1e-14));
    CHECK(n0 == Approx(2.057e-13).epsilon(1e-3));

    b.noise.noise_figure = 5.0;
    CHECK(noise_power(b) == Approx(n0 * std::pow(10.0, 0.5)).epsilon(1e-14));

    b.noise.noise_figure = 0.0;
    b.noise.bandwidth = 1e8;
    CHECK(noise_power(b) == Approx(2.0 * n0).epsilon(1e-14));
}

TEST_CASE("validation names the offending key")
{
    auto cfg = default_scenario();
    cfg.layout.ul_users[1].distance = -3.0;
    try
    {
        validate(cfg);
        FAIL("expected ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(e.key() == "layout.ul_users[1].distance");
    }

    cfg = default_scenario();
    cfg.layout.eves.clear();
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = default_scenario();
    cfg.budgets.solver_tol = 0.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = default_scenario();
    cfg.link.rician_k.ris_user = std::nan("");
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("unknown keys are rejected")
{
    std::string text = dump_scenario(default_scenario());
    CHECK_NOTHROW(parse_scenario(text));
    CHECK_THROWS_AS(parse_scenario(text + "bogus: 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("array:\n  n_tx: 4\n  n_rxx: 4\n"), ConfigError);
}

TEST_CASE("partial files overlay the defaults")
{
    auto cfg = parse_scenario("array:\n  n_tx: 12\nthresholds:\n  gamma_dl_min: 20\n");
    CHECK(cfg.array.n_tx == 12);
    CHECK(cfg.array.n_rx == 8);
    CHECK(cfg.thresholds.gamma_dl_min == 20.0);
    CHECK(cfg.K() == 3);
}

static bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

TEST_CASE("scenario file round trip is bit exact")
{
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep)
    {
        auto cfg = default_scenario();
        cfg.array.wavelength = 0.085 * (1.0 + 0.1 * u(eng));
        cfg.array.spacing_ris = cfg.array.wavelength / (2.0 + u(eng));
        cfg.layout.ris.azimuth_from_bs = 90.0 * u(eng);
        cfg.layout.dl_users.push_back({25.0 + 3.0 * u(eng), 40.0 * u(eng)});
        cfg.layout.eves[0].rcs = 1.0 + std::abs(u(eng)) / 3.0;
        cfg.link.rician_k.bs_ris = 20.0 * std::abs(u(eng));
        cfg.link.rician_k.direct = std::numeric_limits<double>::infinity();
        cfg.link.self_interference.residual_db = -110.0 + u(eng);
        cfg.link.clutter_power = 1e-15 * std::abs(u(eng));
        cfg.thresholds.gamma_dl_min = 10.0 + 7.0 * u(eng);
        cfg.budgets.seed = eng();
        cfg.budgets.solver_tol = 1e-7 * (1.5 + u(eng));
        cfg.options.link_mode = LinkMode::WithDirect;
        cfg.options.refresh_combiners = rep % 2 == 0;

        auto back = parse_scenario(dump_scenario(cfg));
        CHECK(dump_scenario(back) == dump_scenario(cfg));
        CHECK(same_bits(back.array.wavelength, cfg.array.wavelength));
        CHECK(same_bits(back.array.spacing_ris, cfg.array.spacing_ris));
        CHECK(same_bits(back.layout.ris.azimuth_from_bs, cfg.layout.ris.azimuth_from_bs));
        CHECK(same_bits(back.layout.dl_users[2].distance, cfg.layout.dl_users[2].distance));
        CHECK(same_bits(back.layout.dl_users[2].azimuth, cfg.layout.dl_users[2].azimuth));
        CHECK(same_bits(back.layout.eves[0].rcs, cfg.layout.eves[0].rcs));
        CHECK(same_bits(back.link.rician_k.bs_ris, cfg.link.rician_k.bs_ris));
        CHECK(std::isinf(back.link.rician_k.direct));
        CHECK(same_bits(back.link.self_interference.residual_db, cfg.link.self_interference.residual_db));
        CHECK(same_bits(back.link.clutter_power, cfg.link.clutter_power));
        CHECK(same_bits(back.thresholds.gamma_dl_min, cfg.thresholds.gamma_dl_min));
        CHECK(same_bits(back.budgets.solver_tol, cfg.budgets.solver_tol));
        CHECK(back.budgets.seed == cfg.budgets.seed);
        CHECK(back.options.link_mode == LinkMode::WithDirect);
        CHECK(back.options.refresh_combiners == cfg.options.refresh_combiners);
    }
}

TEST_CASE("dB quantities resolve to linear once")
{
    auto cfg = default_scenario();
    auto m = resolve(cfg);
    CHECK(m.p_max == Approx(std::pow(10.0, -0.5)).epsilon(1e-14));
    CHECK(m.gamma_dl == Approx(10.0).epsilon(1e-14));
    CHECK(m.g_tb == Approx(std::pow(10.0, 2.5)).epsilon(1e-14));
    CHECK(std::isinf(m.k_re));
    CHECK(m.k_br == Approx(100.0).epsilon(1e-14));
    CHECK(m.noise == Approx(noise_power(cfg.link)).epsilon(1e-15));
}
