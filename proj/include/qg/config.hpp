#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qg/error.hpp"

namespace qg {

// Experiment configuration file: INI-style sections of key = value lines,
// '#' comments, order-preserving. Consumers mark keys as used; any leftover
// key is an error (misspellings fail loud instead of being ignored).
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has_section(const std::string& section) const;
    bool has_key(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;
    std::vector<int> get_int_list(const std::string& section, const std::string& key) const;

    // All key/value pairs of a section, marking every key consumed.
    std::map<std::string, std::string> section_map(const std::string& section) const;

    std::vector<std::string> section_names() const;

    // Throws listing every key that was never consumed.
    void check_fully_consumed() const;

  private:
    struct Entry {
        std::string value;
        mutable bool consumed = false;
    };
    const Entry* find(const std::string& section, const std::string& key) const;

    // section -> key -> entry; insertion order kept separately.
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::vector<std::string> order_;
};

}  // namespace qg
