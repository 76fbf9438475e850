#pragma once

#include <stdexcept>
#include <string>

namespace qg {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qg
