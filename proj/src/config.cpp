#include "qg/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_string(os.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error("config: malformed section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw Error("config: empty section name at line " + std::to_string(lineno));
            if (!cfg.sections_.count(section)) cfg.order_.push_back(section);
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config: expected key = value at line " + std::to_string(lineno));
        if (section.empty())
            throw Error("config: key outside any section at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error("config: empty key at line " + std::to_string(lineno));
        if (cfg.sections_[section].count(key))
            throw Error("config: duplicate key '" + key + "' in [" + section + "]");
        cfg.sections_[section][key] = Entry{value, false};
    }
    return cfg;
}

bool Config::has_section(const std::string& section) const { return sections_.count(section) > 0; }

bool Config::has_key(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end()) return nullptr;
    const auto jt = it->second.find(key);
    if (jt == it->second.end()) return nullptr;
    jt->second.consumed = true;
    return &jt->second;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (e == nullptr) throw Error("config: missing key '" + key + "' in [" + section + "]");
    return e->value;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e == nullptr ? fallback : e->value;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw Error("config: key '" + key + "' in [" + section + "] is not a number: '" + v + "'");
    }
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
    if (!has_key(section, key)) return fallback;
    return get_double(section, key);
}

int Config::get_int(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw Error("config: key '" + key + "' in [" + section + "] is not an integer: '" + v + "'");
    }
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has_key(section, key)) return fallback;
    return get_int(section, key);
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has_key(section, key)) return fallback;
    const std::string v = get_string(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error("config: key '" + key + "' in [" + section + "] is not a boolean: '" + v + "'");
}

std::vector<double> Config::get_double_list(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(get_string(section, key))) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw Error("config: list element '" + item + "' of '" + key + "' is not a number");
        }
    }
    return out;
}

std::vector<int> Config::get_int_list(const std::string& section, const std::string& key) const {
    std::vector<int> out;
    for (const auto& item : split_list(get_string(section, key))) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error("config: list element '" + item + "' of '" + key + "' is not an integer");
        }
    }
    return out;
}

std::map<std::string, std::string> Config::section_map(const std::string& section) const {
    std::map<std::string, std::string> out;
    const auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& [key, entry] : it->second) {
        entry.consumed = true;
        out[key] = entry.value;
    }
    return out;
}

std::vector<std::string> Config::section_names() const { return order_; }

void Config::check_fully_consumed() const {
    std::vector<std::string> leftovers;
    for (const auto& [section, keys] : sections_)
        for (const auto& [key, entry] : keys)
            if (!entry.consumed) leftovers.push_back("[" + section + "] " + key);
    if (!leftovers.empty()) {
        std::string msg = "config: unknown key(s):";
        for (const auto& k : leftovers) msg += " " + k + ";";
        throw Error(msg);
    }
}

}  // namespace qg
