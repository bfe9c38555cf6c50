#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "packlim/descriptors.hpp"

namespace {

const std::string kTmp = PACKLIM_TEST_TMP;

int run_cli(const std::string& args) {
    std::string cmd = std::string(PACKLIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("descriptors parse and round-trip") {
    using namespace packlim;
    auto pl = parse_sequence_descriptor(R"({"model":"powerlaw","L":2.0,"d":0.4})");
    CHECK(pl.power_scale() == 2.0);
    CHECK(pl.power_dim() == 0.4);
    auto bg = parse_sequence_descriptor(R"({"model":"blockgeo","rho":0.25,"m":3,"b":0.5})");
    CHECK(bg.block_count_factor() == 3);
    auto ex = parse_sequence_descriptor(R"({"model":"explicit","lengths":[0.5,0.25]})");
    CHECK(ex.explicit_tail() == 0.0);  // tail defaults to zero
    auto sys = parse_sequence_descriptor(
        R"({"model":"system","ratios":[0.5,0.3333333333333333],"gaps":[0.16666666666666669]})");
    CHECK(sys.system().branch_count() == 2);

    for (const auto& seq : {pl, bg, ex, sys}) {
        auto round = parse_sequence_descriptor(sequence_descriptor_json(seq));
        CHECK(round.model() == seq.model());
        for (std::uint64_t j : {1ull, 2ull})
            CHECK(round.length(j) == doctest::Approx(seq.length(j)).epsilon(1e-15));
    }

    CHECK_THROWS_AS((void)parse_sequence_descriptor("{bad"), Error);
    CHECK_THROWS_AS((void)parse_sequence_descriptor(R"({"model":"powerlaw","L":1.0})"),
                    Error);
    CHECK_THROWS_AS((void)parse_system_descriptor(R"({"ratios":[0.5],"gaps":[]})"), Error);
}

TEST_CASE("descriptor and flag errors exit with code 2") {
    CHECK(run_cli("pack-curve --set /nonexistent.json") == 2);
    write_file(kTmp + "/broken.json", "{not json");
    CHECK(run_cli("pack-curve --set " + kTmp + "/broken.json") == 2);
    write_file(kTmp + "/unknown.json", R"({"model":"mystery"})");
    CHECK(run_cli("pack-curve --set " + kTmp + "/unknown.json") == 2);
    // an empty grid is an input error
    write_file(kTmp + "/pl.json", R"({"model":"powerlaw","L":1.0,"d":0.5})");
    CHECK(run_cli("pack-curve --set " + kTmp + "/pl.json --eps-start 1e-6 --eps-stop 1e-2") ==
          2);
    CHECK(run_cli("constants --d 1.5") == 2);
}

TEST_CASE("pack-curve emits the documented csv") {
    write_file(kTmp + "/pl.json", R"({"model":"powerlaw","L":1.0,"d":0.5})");
    std::string out = kTmp + "/curve.csv";
    CHECK(run_cli("pack-curve --set " + kTmp + "/pl.json --eps-start 1e-2 --eps-stop 1e-4 "
                  "--per-decade 2 --out " + out) == 0);
    std::string text = slurp(out);
    CHECK(text.rfind("epsilon,count,normalized,lp_upper,greedy_lower\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);  // header + 5 grid rows
}

TEST_CASE("csv output is byte-stable across runs and thread counts") {
    write_file(kTmp + "/pl.json", R"({"model":"powerlaw","L":1.0,"d":0.5})");
    std::string a = kTmp + "/curve_a.csv", b = kTmp + "/curve_b.csv";
    std::string base = "pack-curve --set " + kTmp + "/pl.json --eps-start 1e-2 "
                       "--eps-stop 1e-4 --per-decade 3 --out ";
    CHECK(run_cli(base + a) == 0);
    CHECK(run_cli(base + b + " --threads 4 --seed-free") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("constants table") {
    std::string out = kTmp + "/const.csv";
    CHECK(run_cli("constants --d 0.4 --d 0.5 --d 0.999 --out " + out) == 0);
    std::string text = slurp(out);
    CHECK(text.rfind("d,A_d,A_d_tail,p_d\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("config file supplies defaults that flags override") {
    write_file(kTmp + "/pl.json", R"({"model":"powerlaw","L":1.0,"d":0.5})");
    write_file(kTmp + "/conf.json",
               R"({"eps-start": 1e-2, "eps-stop": 1e-3, "per-decade": 2})");
    std::string via_config = kTmp + "/via_config.csv";
    std::string via_flags = kTmp + "/via_flags.csv";
    CHECK(run_cli("pack-curve --config " + kTmp + "/conf.json --set " + kTmp +
                  "/pl.json --out " + via_config) == 0);
    CHECK(run_cli("pack-curve --set " + kTmp + "/pl.json --eps-start 1e-2 --eps-stop 1e-3 "
                  "--per-decade 2 --out " + via_flags) == 0);
    CHECK(slurp(via_config) == slurp(via_flags));

    // a flag on the command line wins over the config value
    std::string overridden = kTmp + "/overridden.csv";
    CHECK(run_cli("pack-curve --config " + kTmp + "/conf.json --set " + kTmp +
                  "/pl.json --per-decade 4 --out " + overridden) == 0);
    CHECK(slurp(overridden) != slurp(via_config));
}

TEST_CASE("mssp bracket line") {
    write_file(kTmp + "/inst.json",
               R"({"model":"explicit","lengths":[0.5,0.25,0.125,0.0625],"tail":0.0625})");
    std::string out = kTmp + "/mssp.csv";
    CHECK(run_cli("mssp --seq " + kTmp + "/inst.json --eps 0.25 --d 0.5 --out " + out) == 0);
    std::string text = slurp(out);
    CHECK(text.rfind("lower,upper,greedy,tailbound\n", 0) == 0);
}

TEST_CASE("tube csv") {
    write_file(kTmp + "/pl.json", R"({"model":"powerlaw","L":1.0,"d":0.5})");
    std::string out = kTmp + "/tube.csv";
    CHECK(run_cli("tube --set " + kTmp + "/pl.json --eps-start 1e-2 --eps-stop 1e-3 "
                  "--per-decade 2 --out " + out) == 0);
    CHECK(slurp(out).rfind("epsilon,tube_volume,normalized_content\n", 0) == 0);

    // explicit sequences carry no intrinsic dimension
    write_file(kTmp + "/ex.json", R"({"model":"explicit","lengths":[0.5,0.25],"tail":0.25})");
    CHECK(run_cli("tube --set " + kTmp + "/ex.json --eps-start 2e-1 --eps-stop 1e-1") == 2);
    CHECK(run_cli("tube --set " + kTmp + "/ex.json --d 0.5 --eps-start 2e-1 --eps-stop 1.3e-1") ==
          0);
}

TEST_CASE("pack-curve accepts a system descriptor at coarse scales") {
    write_file(kTmp + "/t.json",
               R"({"model":"system","ratios":[0.5,0.3333333333333333],"gaps":[0.16666666666666669]})");
    std::string out = kTmp + "/curve_t.csv";
    CHECK(run_cli("pack-curve --set " + kTmp + "/t.json --eps-start 3e-1 --eps-stop 1e-1 "
                  "--per-decade 4 --out " + out) == 0);
    std::string text = slurp(out);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 3);
}

TEST_CASE("lp-verify runs its default grid") {
    std::string out = kTmp + "/lp.csv";
    CHECK(run_cli("lp-verify --eps-start 1e-1 --eps-stop 1e-2 --out " + out) == 0);
    std::string text = slurp(out);
    CHECK(text.rfind("instance,K,primalObj,dualObj,gap,maxResidual\n", 0) == 0);
    CHECK(text.find("cantor(") != std::string::npos);
}

TEST_CASE("renewal report on a system descriptor") {
    write_file(kTmp + "/t.json",
               R"({"model":"system","ratios":[0.5,0.3333333333333333],"gaps":[0.16666666666666669]})");
    std::string out = kTmp + "/renewal.txt";
    std::string csv = kTmp + "/renewal.csv";
    CHECK(run_cli("renewal --system " + kTmp + "/t.json --max-depth 16 --out " + out +
                  " --csv " + csv + " --eps-start 1e-1 --eps-stop 1e-3 --per-decade 2") ==
          0);
    std::string text = slurp(out);
    CHECK(text.find("packing_constant,") != std::string::npos);
    CHECK(text.find("jump_table") != std::string::npos);
    CHECK(slurp(csv).rfind("epsilon,count,normalized\n", 0) == 0);
}

TEST_CASE("mssp brackets on an infinite model") {
    write_file(kTmp + "/pl.json", R"({"model":"powerlaw","L":1.0,"d":0.5})");
    std::string out = kTmp + "/mssp_pl.csv";
    CHECK(run_cli("mssp --seq " + kTmp + "/pl.json --eps 1e-3 --out " + out) == 0);
    std::string text = slurp(out);
    CHECK(text.rfind("lower,upper,greedy,tailbound\n", 0) == 0);
    // the bracket columns are populated from the block cover and tail bound
    CHECK(text.find(",,") == std::string::npos);
}

TEST_CASE("sharpness report") {
    std::string out = kTmp + "/sharp.txt";
    CHECK(run_cli("sharpness --max-depth 16 --out " + out) == 0);
    std::string text = slurp(out);
    CHECK(text.find("verdict,packing constant < p_t * content") != std::string::npos);
    CHECK(text.find("S_oscillates,yes") != std::string::npos);
}

TEST_CASE("pack-curve on the rearranged Cantor set carries certificate bounds") {
    // the ten-digit rho from the descriptor format still counts as 1/3
    write_file(kTmp + "/s.json", R"({"model":"blockgeo","rho":0.3333333333,"m":2,"b":1.0})");
    std::string out = kTmp + "/curve_s.csv";
    CHECK(run_cli("pack-curve --set " + kTmp + "/s.json --eps-start 1e-2 --eps-stop 1e-3 "
                  "--per-decade 2 --out " + out) == 0);
    std::string text = slurp(out);
    // lp_upper column populated: no row ends with ",," before greedy_lower
    std::size_t rows = 0, with_upper = 0;
    std::size_t pos = text.find('\n') + 1;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) break;
        std::string row = text.substr(pos, end - pos);
        ++rows;
        // fields: epsilon,count,normalized,lp_upper,greedy_lower
        std::size_t c3 = row.find(',', row.find(',', row.find(',') + 1) + 1);
        if (row[c3 + 1] != ',') ++with_upper;
        pos = end + 1;
    }
    CHECK(rows >= 3);
    CHECK(with_upper == rows);
}

TEST_CASE("lp-verify json dump") {
    std::string out = kTmp + "/lp2.csv";
    std::string json = kTmp + "/certs.json";
    CHECK(run_cli("lp-verify --d 0.5 --eps-start 1e-1 --eps-stop 5e-2 --cantor-n 5 "
                  "--cantor-a 3.0 --out " + out + " --json " + json) == 0);
    std::string dump = slurp(json);
    CHECK(dump.find("\"instance\": \"cantor\"") != std::string::npos);
    CHECK(dump.find("\"primalObj\"") != std::string::npos);
}
