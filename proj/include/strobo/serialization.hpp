#pragma once

#include <string>

#include <json.hpp>

#include "strobo/compiler.hpp"
#include "strobo/decoupling.hpp"
#include "strobo/lattice.hpp"
#include "strobo/pauli_sum.hpp"
#include "strobo/schedule.hpp"

namespace strobo {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// Sums serialize as arrays of {pauli, coeff, dt_power, lambda_power}.
Json sum_to_json(const WeightedPauliSum& s);
WeightedPauliSum sum_from_json(size_t n, const Json& j);

Json layer_to_json(const CliffordLayer& l);
CliffordLayer layer_from_json(size_t n, const Json& j);

// {n_qubits, hamiltonians:{name:sum}, events:[...], declared_target, cyclic}
Json schedule_to_json(const PulseSchedule& s);
PulseSchedule schedule_from_json(const Json& j);

// {dims, connectivity, periodic, mode, holes, stabilizers}
Json layout_to_json(const CodeLayout& c);
CodeLayout layout_from_json(const Json& j);

Json dd_to_json(const DDSequence& d);
DDSequence dd_from_json(const Json& j);

Json report_to_json(const CompileReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace strobo
