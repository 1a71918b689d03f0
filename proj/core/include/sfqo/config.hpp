#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfqo {

const char* version();

enum class FieldType { Real, Integer, Bool, Text, RealList, IntList };

struct FieldSpec {
    std::string path;  // section.key
    FieldType type;
    std::string default_value;
    std::string doc;
};

// Every accepted key with its type and default.
const std::vector<FieldSpec>& config_schema();
std::string type_name(FieldType t);

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Flat sections of `key = value` lines; '#' starts a comment.
class RunConfig {
public:
    static RunConfig defaults();
    static RunConfig parse(std::istream& in, const std::string& origin = "<input>");
    static RunConfig load(const std::string& file);

    // Value is type-checked against the schema.
    void set(const std::string& path, const std::string& value);
    // "section.key=value"
    void apply_override(const std::string& assignment);

    double real(const std::string& path) const;
    long integer(const std::string& path) const;
    bool flag(const std::string& path) const;
    std::string text(const std::string& path) const;
    std::vector<double> reals(const std::string& path) const;
    std::vector<long> integers(const std::string& path) const;

    // INI text of every key except run.out_dir, sorted; parses back to the same values.
    std::string canonical() const;
    // FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;

private:
    const std::string& raw(const std::string& path, FieldType expect) const;
    std::map<std::string, std::string> values_;
};

}  // namespace sfqo
