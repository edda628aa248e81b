#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QWALK_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    CommandResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
        res.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// First non-metadata line is the header; returns (header, data rows).
std::pair<std::vector<std::string>, std::vector<std::vector<std::string>>>
parse_table(const std::string& text) {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    for (const std::string& line : lines_of(text)) {
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = split_csv(line);
        } else {
            rows.push_back(split_csv(line));
        }
    }
    return {header, rows};
}

int column_index(const std::vector<std::string>& header,
                 const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

TEST_CASE("evolve emits one row per recorded step with the known variance") {
    const CommandResult res =
        run_cli("evolve --coin hadamard --init-eta 0 --steps 3 "
                "--record-every 1");
    CHECK(res.exit_code == 0);
    const auto [header, rows] = parse_table(res.output);
    REQUIRE(header.size() >= 4);
    CHECK(header[0] == "tau");
    CHECK(header[1] == "mean");
    CHECK(header[2] == "variance");
    CHECK(header[3] == "shannon_entropy");
    REQUIRE(rows.size() == 3);
    const int var_col = column_index(header, "variance");
    CHECK(std::stod(rows[1][static_cast<std::size_t>(var_col)]) ==
          doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("ballistic evolve rows all have zero variance") {
    const CommandResult res =
        run_cli("evolve --coin identity --init \"+;0\" --steps 10 "
                "--record-every 1");
    CHECK(res.exit_code == 0);
    const auto [header, rows] = parse_table(res.output);
    const int var_col = column_index(header, "variance");
    REQUIRE(var_col >= 0);
    REQUIRE(rows.size() == 10);
    for (const auto& row : rows) {
        CHECK(std::stod(row[static_cast<std::size_t>(var_col)]) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("missing required --steps flag exits with code 2 naming the flag") {
    const CommandResult res = run_cli("evolve --coin hadamard");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("steps") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::string cmd =
        "quantumness --sweep q:0:1:5 --channel unital-decay --tau 20 "
        "--coin hadamard --init \"+;0\" --threads 4";
    const CommandResult a = run_cli(cmd);
    const CommandResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());
}

TEST_CASE("quantumness table carries the additivity identity in each row") {
    const CommandResult res =
        run_cli("quantumness --sweep q:0:1:3 --channel unital-decay --tau 12 "
                "--coin hadamard --init \"+;0\"");
    CHECK(res.exit_code == 0);
    const auto [header, rows] = parse_table(res.output);
    const int q_col = column_index(header, "Q");
    const int c_col = column_index(header, "C");
    const int total_col = column_index(header, "total_Q");
    REQUIRE(q_col >= 0);
    REQUIRE(c_col >= 0);
    REQUIRE(total_col >= 0);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        const double q = std::stod(row[static_cast<std::size_t>(q_col)]);
        const double c = std::stod(row[static_cast<std::size_t>(c_col)]);
        const double total =
            std::stod(row[static_cast<std::size_t>(total_col)]);
        CHECK(std::abs(total - (q + c)) < 1e-9);
        CHECK(q >= 0.0);
        CHECK(c >= 0.0);
    }
    // q=0 row keeps positive coherence
    CHECK(std::stod(rows[0][static_cast<std::size_t>(c_col)]) > 0.0);
}

TEST_CASE("metadata block records the resolved parameters") {
    const CommandResult res =
        run_cli("quantumness --tau 8 --coin param:0,0,1 --init \"0.3;0.7\"");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("# command=quantumness") != std::string::npos);
    CHECK(res.output.find("# tool_version=") != std::string::npos);
    CHECK(res.output.find("# theta=1") != std::string::npos);
    CHECK(res.output.find("# init_eta=0.3") != std::string::npos);
    CHECK(res.output.find("# topology=line") != std::string::npos);
}

TEST_CASE("contraction sweep rows are all classical") {
    const CommandResult res =
        run_cli("quantumness --sweep q:0:1:3 --channel contraction --tau 10 "
                "--coin identity --init \"+;0\"");
    CHECK(res.exit_code == 0);
    const auto [header, rows] = parse_table(res.output);
    const int total_col = column_index(header, "total_Q");
    for (const auto& row : rows) {
        CHECK(std::stod(row[static_cast<std::size_t>(total_col)]) < 1e-9);
    }
}

TEST_CASE("transport rows keep the bound chain ordered") {
    const CommandResult res = run_cli(
        "transport --loop 9 --sink-site 3 --sink-r 1 --coin param:0,0,1 "
        "--init \"+;0\" --channel unital-decay --sweep q:0:1:3 --tau 25");
    CHECK(res.exit_code == 0);
    const auto [header, rows] = parse_table(res.output);
    const int q_col = column_index(header, "Q");
    const int total_col = column_index(header, "total_Q");
    const int u_col = column_index(header, "u");
    const int dev_col = column_index(header, "deviation");
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        const double q = std::stod(row[static_cast<std::size_t>(q_col)]);
        const double total =
            std::stod(row[static_cast<std::size_t>(total_col)]);
        const double u = std::stod(row[static_cast<std::size_t>(u_col)]);
        CHECK(total >= q - 1e-9);
        CHECK(q >= u - 1e-9);
        CHECK(u >= -1e-9);
        CHECK(std::stod(row[static_cast<std::size_t>(dev_col)]) >= 0.0);
    }
}

TEST_CASE("r=0 transport rows have zero deviation and u") {
    const CommandResult res = run_cli(
        "transport --loop 5 --sink-site 2 --sink-r 0 --coin hadamard "
        "--init \"+;0\" --tau 10");
    CHECK(res.exit_code == 0);
    const auto [header, rows] = parse_table(res.output);
    const int u_col = column_index(header, "u");
    const int dev_col = column_index(header, "deviation");
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0][static_cast<std::size_t>(dev_col)]) == 0.0);
    CHECK(std::stod(rows[0][static_cast<std::size_t>(u_col)]) == 0.0);
}

TEST_CASE("oracle-check passes for the Hadamard coin") {
    const CommandResult res = run_cli("oracle-check --coin hadamard --max-tau 30");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("OK") != std::string::npos);
}

TEST_CASE("oracle-check skips singular coins with a notice") {
    const CommandResult res = run_cli("oracle-check --coin identity");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("SingularCoin") != std::string::npos);
}

TEST_CASE("seeded random oracle-check is deterministic and passes") {
    const std::string cmd = "oracle-check --random-coins 10 --max-tau 20 --seed 7";
    const CommandResult a = run_cli(cmd);
    const CommandResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("jsonl output carries one object per row") {
    const CommandResult res =
        run_cli("quantumness --tau 6 --coin hadamard --format jsonl");
    CHECK(res.exit_code == 0);
    bool found_row = false;
    for (const std::string& line : lines_of(res.output)) {
        if (line.empty() || line[0] == '#') continue;
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
        CHECK(line.find("\"Q\":") != std::string::npos);
        found_row = true;
    }
    CHECK(found_row);
}

TEST_CASE("unknown channel name is a usage error") {
    const CommandResult res =
        run_cli("quantumness --tau 5 --channel bogus");
    CHECK(res.exit_code == 2);
}

TEST_CASE("out-of-range channel parameter is a usage error") {
    const CommandResult res = run_cli(
        "quantumness --tau 5 --channel unital-decay --channel-param 1.5");
    CHECK(res.exit_code == 2);
}
