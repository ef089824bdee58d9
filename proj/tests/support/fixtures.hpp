#pragma once

#include "qpunct/code_io.hpp"

#include <string>

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(QPUNCT_DATA_DIR) + "/" + name; }

inline qpunct::StabilizerCode load(const std::string& name) { return qpunct::read_code_file(path(name)).code; }

inline qpunct::StabilizerCode qutrit5() { return load("qutrit_5_2_2.code"); }
inline qpunct::StabilizerCode qutrit15() { return load("qutrit_15_3_5.code"); }
inline qpunct::StabilizerCode qubit21() { return load("qubit_21_5_6.code"); }

}  // namespace fixtures
