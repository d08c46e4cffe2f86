#pragma once

#include "hahn/coeff_field.hpp"
#include "hahn/error.hpp"
#include "hahn/hahn_series.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hahn::cli {

enum ExitCode : int {
    kOk = 0,
    kUnsolvable = 1,   // certified: no solution, or a failing example
    kUnknown = 2,      // undecided within the bound, or precision exhausted
    kInputError = 3,   // parse, config and precondition errors
    kUnsupported = 4,
};

int exit_code_for(ErrorKind kind);

enum class Format { Text, Json };

struct SessionConfig {
    CoeffField field = CoeffField::RationalFunctions;
    std::string group = "Z";
    std::string cmap = "0";
    std::optional<std::string> truncation;
    Format format = Format::Text;

    FieldSpec to_spec() const;
};

// "key = value" lines with '#' comments; keys field, group, cmap, trunc, format.
void apply_config_text(SessionConfig& config, const std::string& text, const std::string& source);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

// Runs one hahnlab invocation (args excludes the program name). HAHNLAB_TRUNC
// supplies the truncation when neither --trunc nor the config file does.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env);

}  // namespace hahn::cli
