#ifndef TCI_CSV_HPP
#define TCI_CSV_HPP

#include <string>

namespace tci {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace tci

#endif  // TCI_CSV_HPP
