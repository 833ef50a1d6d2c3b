// Copyright 2026 The magicrm Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "magicrm/cli.hpp"

using namespace magicrm;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(MAGICRM_FIXTURES) + "/" + name; }

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("magicrm_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
    static inline int counter_ = 0;
};

std::string data_error_message(const std::string& path) {
    try {
        load_records(path);
    } catch (const data_error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Records, RoundTripIsExact) {
    auto data = simulate_experiment(gamma_state(3, 2), 11, 30, 50, NoiseParams{0.9, 0.97, 0.2});
    data.state_label = "gamma:n=3,t=2";
    std::stringstream buf;
    write_records(data, buf);
    auto back = read_records(buf);
    EXPECT_EQ(back.n, 3);
    EXPECT_EQ(back.seed, 11u);
    EXPECT_EQ(back.state_label, data.state_label);
    ASSERT_TRUE(back.noise);
    EXPECT_EQ(back.noise->epsilon, 0.2);
    ASSERT_EQ(back.records.size(), data.records.size());
    for (size_t i = 0; i < data.records.size(); ++i) {
        EXPECT_EQ(back.records[i].word, data.records[i].word);
        EXPECT_EQ(back.records[i].counts, data.records[i].counts);
    }
    EXPECT_EQ(estimate(back).W, estimate(data).W);
}

TEST(Records, BitStringsListQubitZeroFirst) {
    ExperimentData d;
    d.n = 3;
    d.state_label = "zero:n=3";
    d.records.push_back(ShotRecord{{0, 0, 0}, {{0b100, 2}, {0b001, 1}}, {}});
    std::stringstream buf;
    write_records(d, buf);
    const std::string text = buf.str();
    EXPECT_NE(text.find("\"100\":2"), std::string::npos);
    EXPECT_NE(text.find("\"001\":1"), std::string::npos);
}

TEST(Records, HandWrittenFixture) {
    auto d = load_records(fixture("plus_two_records.ndjson"));
    ASSERT_EQ(d.records.size(), 2u);
    // record 1: p = (3/4, 1/4); record 2: p = (1, 0)
    auto plug = estimate(d, Method::plug_in);
    EXPECT_NEAR(plug.W, (0.296875 + 1.0) / 2, 1e-15);
    EXPECT_NEAR(plug.P, (0.875 + 2.0) / 2, 1e-15);
    // shots {0,0,0,1}: every distinct quadruple has odd parity, half the pairs differ
    auto u = estimate(d, Method::u_statistic);
    EXPECT_NEAR(u.W, (-0.5 + 1.0) / 2, 1e-15);
    EXPECT_NEAR(u.P, (0.5 + 2.0) / 2, 1e-15);
}

TEST(Records, ErrorsCarrySourceAndLine) {
    EXPECT_NE(data_error_message(fixture("bad_json_line3.ndjson")).find("bad_json_line3.ndjson:3:"), std::string::npos);
    EXPECT_NE(data_error_message(fixture("duplicate_outcome.ndjson")).find(":2: duplicate key '01'"), std::string::npos);
    EXPECT_NE(data_error_message(fixture("header_only.ndjson")).find("no records"), std::string::npos);
    EXPECT_NE(data_error_message(fixture("bad_clifford_id.ndjson")).find(":2:"), std::string::npos);
    EXPECT_NE(data_error_message(fixture("missing.ndjson")).find("cannot open"), std::string::npos);
}

TEST(Records, RejectsMalformedContent) {
    const std::string h = R"({"format_version":1,"n":2,"state_label":"zero:n=2","seed":0})";
    auto bad = [&](const std::string& body) {
        std::stringstream s(h + "\n" + body + "\n");
        EXPECT_THROW(read_records(s), data_error) << body;
    };
    bad(R"({"clifford_ids":[0],"counts":{"00":1}})");
    bad(R"({"clifford_ids":[0,0],"counts":{"0":1}})");
    bad(R"({"clifford_ids":[0,0],"counts":{"0x":1}})");
    bad(R"({"clifford_ids":[0,0],"counts":{"00":0}})");
    bad(R"({"clifford_ids":[0,0],"counts":{}})");
    bad(R"([1,2])");
    std::stringstream v(R"({"format_version":2,"n":1,"state_label":"x"})");
    EXPECT_THROW(read_records(v), data_error);
    std::stringstream empty("");
    EXPECT_THROW(read_records(empty), data_error);
}

TEST(StateLabels, RoundTrip) {
    for (const std::string label : {"zero:n=3", "gamma:n=4,t=7", "haar:n=2,seed=9"}) {
        EXPECT_EQ(state_label(parse_state_label(label)), label);
    }
    auto s = parse_state_label("ptheta:theta=0.5");
    EXPECT_EQ(s.theta, 0.5);
    EXPECT_THROW(parse_state_label("gamma:n=3"), domain_error);
    EXPECT_THROW(parse_state_label("bell:n=2"), domain_error);
    EXPECT_THROW(parse_state_label("zero:n=x"), domain_error);
    EXPECT_THROW(make_state(parse_state_label("gamma:n=3,t=6")), domain_error);
}

TEST(Reports, JsonRoundTrip) {
    Report r;
    r.command = "fit-noise";
    r.seed = 42;
    r.state_label = "gamma:n=3,t=5";
    EstimateReport e;
    e.W = 0.031;
    e.dW = 0.002;
    e.P = 0.9;
    e.dP = 0.01;
    e.M2 = std::numeric_limits<double>::quiet_NaN();
    e.dM2 = std::numeric_limits<double>::quiet_NaN();
    e.m2_defined = false;
    e.warning = true;
    e.method = Method::u_statistic;
    e.n_u = 20;
    e.n_m = 60;
    r.estimate = e;
    r.zero_estimate = e;
    r.noise_fit = NoiseFitSummary{0.9, 0.95, 0.3, 0.01, 0.002, 0.05};
    r.oracle = oracle_values(gamma_state(3, 5));
    r.prediction = PredictionSummary{0.95, 0.1, predict_noisy_observables(gamma_state(3, 5), 0.95, 0.1), 0.03, 0.031};
    r.calibration = std::vector<GridCell>{GridCell{8, 32, 0.1, 1.0, 0.2, 100}};
    r.optimum = r.calibration->front();
    r.per_record = {{0.1, 1.0}, {0.2, 0.9}};
    const json j = report_to_json(r);
    EXPECT_TRUE(j["estimates"]["M2"].is_null());
    const json again = report_to_json(report_from_json(json::parse(j.dump())));
    EXPECT_EQ(j, again);
}

TEST(Grids, LoadFromFile) {
    auto g = load_grid(fixture("small_grid.json"));
    EXPECT_EQ(g.n_u, (std::vector<size_t>{8, 16}));
    EXPECT_EQ(g.n_m, (std::vector<uint64_t>{32, 64}));
    EXPECT_THROW(load_grid(fixture("plus_two_records.ndjson")), data_error);
}

TEST(Cli, OracleOnStabilizerPhase) {
    auto r = cli({"oracle", "--state", "ptheta", "--theta", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.report();
    EXPECT_EQ(j["tool"], "magicrm");
    EXPECT_EQ(j["command"], "oracle");
    EXPECT_NEAR(j["oracle"]["M2"].get<double>(), 0.0, 1e-12);
    EXPECT_NEAR(j["oracle"]["W"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, OracleOnGammaLabel) {
    auto r = cli({"oracle", "--state", "gamma:n=3,t=1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(100 * r.report()["oracle"]["W"].get<double>(), 9.4, 0.05);
    EXPECT_EQ(r.report()["state_label"], "gamma:n=3,t=1");
}

TEST(Cli, SimulateThenEstimateIsBitExact) {
    TempDir dir;
    const auto records = dir.file("rec.ndjson");
    auto s = cli({"simulate", "--state", "gamma", "--n", "3", "--t", "4", "--nu", "40", "--nm", "60", "--seed", "5",
                  "--records-out", records, "--method", "ustat"});
    ASSERT_EQ(s.code, 0) << s.err;
    auto e = cli({"estimate", "--records", records, "--method", "ustat"});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(s.report()["estimates"], e.report()["estimates"]);
    EXPECT_EQ(e.report()["seed"], 5);
    EXPECT_EQ(e.report()["resources"]["N_U"], 40);
}

TEST(Cli, SimulateIsReproducibleAndWritesOut) {
    TempDir dir;
    const std::vector<std::string> base{"simulate", "--state", "ptheta:theta=0.3", "--nu", "10", "--nm", "20", "--seed", "8"};
    auto a = cli(base);
    auto b = cli(base);
    EXPECT_EQ(a.out, b.out);
    auto with_out = base;
    with_out.insert(with_out.begin(), {"--out", dir.file("r.json")});
    auto c = cli(with_out);
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_TRUE(c.out.empty());
    std::ifstream f(dir.file("r.json"));
    EXPECT_EQ(json::parse(f), a.report());
}

TEST(Cli, VerboseAddsPerRecordRows) {
    auto r = cli({"simulate", "--state", "zero", "--n", "2", "--nu", "7", "--nm", "10", "--seed", "1", "--verbose"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["per_record"].size(), 7u);
}

TEST(Cli, FitNoiseRecoversPhaseDisplacement) {
    TempDir dir;
    const auto z = dir.file("z.ndjson"), t = dir.file("t.ndjson");
    ASSERT_EQ(cli({"simulate", "--state", "zero", "--n", "3", "--nu", "400", "--nm", "300", "--seed", "2", "--noise",
                   "1,1,0.357", "--records-out", z})
                  .code,
              0);
    ASSERT_EQ(cli({"simulate", "--state", "gamma", "--n", "3", "--t", "5", "--nu", "400", "--nm", "300", "--seed", "3",
                   "--noise", "1,1,0.357", "--records-out", t})
                  .code,
              0);
    auto r = cli({"fit-noise", "--records-zero", z, "--records", t});
    ASSERT_EQ(r.code, 0) << r.err;
    auto f = r.report()["noise_fit"];
    // single-run eps scatter is ~0.1, so judge against the reported error
    EXPECT_GT(f["depsilon"].get<double>(), 0.0);
    EXPECT_NEAR(f["epsilon"].get<double>(), 0.357, 3 * f["depsilon"].get<double>());
    EXPECT_NEAR(f["q"].get<double>(), 1.0, 0.02);
    EXPECT_NEAR(f["p"].get<double>(), 1.0, 0.1);
    EXPECT_EQ(r.report()["state_label"], "gamma:n=3,t=5");
}

TEST(Cli, CalibrateWithGridFile) {
    auto r = cli({"calibrate", "--state", "ptheta:theta=0.7853981633974483", "--grid", fixture("small_grid.json"),
                  "--trials", "20", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = r.report();
    EXPECT_EQ(j["calibration"].size(), 4u);
    EXPECT_EQ(j["calibration"][0]["trials"], 20);
    auto o = cli({"calibrate", "--state", "zero:n=1", "--grid", fixture("small_grid.json"), "--trials", "5", "--seed",
                  "4", "--reference", "oracle"});
    EXPECT_EQ(o.code, 0) << o.err;
}

TEST(Cli, PredictExamples) {
    auto r = cli({"predict", "--state", "gamma:n=3,t=5", "--p-from-purity", "0.9"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(100 * r.report()["prediction"]["ratio"].get<double>(), 3.4, 0.1);
    auto c = cli({"predict", "--state", "gamma:n=3,t=5", "--p", "1", "--eps", "0", "--w-exp", "0.05"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_NEAR(c.report()["prediction"]["W_corrected"].get<double>(), 0.05, 1e-12);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli({}).code, exit_code::usage);
    EXPECT_EQ(cli({"oracle"}).code, exit_code::usage);
    EXPECT_EQ(cli({"oracle", "--state", "zero", "--bogus"}).code, exit_code::usage);
    EXPECT_EQ(cli({"--help"}).code, exit_code::ok);
    EXPECT_EQ(cli({"oracle", "--state", "gamma", "--n", "3", "--t", "9"}).code, exit_code::domain);
    EXPECT_EQ(cli({"oracle", "--state", "zero", "--n", "13"}).code, exit_code::size);
    EXPECT_EQ(cli({"estimate", "--records", fixture("header_only.ndjson")}).code, exit_code::data);
    EXPECT_EQ(cli({"predict", "--state", "zero:n=2", "--p-from-purity", "0.9"}).code, exit_code::infeasible);
    EXPECT_EQ(cli({"predict", "--state", "zero:n=2"}).code, exit_code::domain);
    EXPECT_EQ(cli({"simulate", "--state", "zero", "--nu", "3", "--nm", "3", "--seed", "1", "--noise", "2,1,0"}).code,
              exit_code::domain);
    EXPECT_EQ(cli({"estimate", "--records", fixture("plus_two_records.ndjson"), "--method", "median"}).code,
              exit_code::domain);
}

TEST(Cli, HelpMentionsBitOrderAndExitCodes) {
    auto r = cli({"--help"});
    EXPECT_NE(r.out.find("qubit 0 first"), std::string::npos);
    EXPECT_NE(r.out.find("infeasible"), std::string::npos);
}

TEST(Cli, BinaryExitStatus) {
    const std::string bin = MAGICRM_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("oracle --state zero --n 2"), 0);
    EXPECT_EQ(status("estimate --records " + fixture("bad_json_line3.ndjson")), exit_code::data);
    EXPECT_EQ(status("nonsense"), exit_code::usage);
}
