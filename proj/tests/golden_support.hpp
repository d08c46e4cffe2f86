#pragma once

#include "hahn/cli.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
    int exit = 0;
};

struct GoldenOutcome {
    GoldenCase golden;
    int exit = 0;
    std::string expected_text, actual_text;
    nlohmann::json expected, actual;
    bool match() const { return exit == golden.exit && expected_text == actual_text; }
};

inline std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

inline nlohmann::json read_json(const std::string& path) { return nlohmann::json::parse(read_text(path)); }

inline std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> out;
    for (const auto& c : read_json(std::string(HAHN_GOLDEN_DIR) + "/cases.json"))
        out.push_back({c.at("name"), c.at("args").get<std::vector<std::string>>(), c.at("exit")});
    return out;
}

inline int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err,
                   const hahn::cli::EnvLookup& env = [](const std::string&) { return std::optional<std::string>(); }) {
    std::ostringstream o, e;
    int code = hahn::cli::run(args, o, e, env);
    out = o.str();
    err = e.str();
    return code;
}

inline GoldenOutcome run_golden(const GoldenCase& c) {
    std::vector<std::string> args{"--format", "json"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    std::string out, err;
    GoldenOutcome r{c, run_cli(args, out, err), read_text(std::string(HAHN_GOLDEN_DIR) + "/" + c.name + ".json"), out,
                    {}, {}};
    r.expected = nlohmann::json::parse(r.expected_text);
    r.actual = nlohmann::json::parse(out, nullptr, false);
    return r;
}

}  // namespace testing_support
