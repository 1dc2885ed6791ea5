#ifndef GENESYS_TEST_HELPERS_HPP
#define GENESYS_TEST_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "genesys/machine.hpp"

namespace test {

inline std::string data_path(const std::string& rel) {
    return std::string(GENESYS_DATA_DIR) + "/" + rel;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline genesys::MachineModel load(const std::string& rel) {
    return genesys::parse(slurp(data_path(rel)));
}

} // namespace test

#endif
