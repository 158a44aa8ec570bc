#pragma once

#include <string>

#include <json.hpp>

#include "hamreduce/circuit.hpp"
#include "hamreduce/clock.hpp"
#include "hamreduce/hamiltonian.hpp"

namespace hamreduce {

// All artifacts carry schema_version 1 and use fixed key order so reruns
// are byte-identical.
using Json = nlohmann::ordered_json;

Json spec_to_json(const HamiltonianSpec& spec);
HamiltonianSpec spec_from_json(const Json& j);

Json circuit_to_json(const QuantumCircuit& circ);
QuantumCircuit circuit_from_json(const Json& j);

Json schedule_to_json(const ClockSchedule& sched);
ClockSchedule schedule_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// FNV-1a content digest, hex encoded; embedded in CLI outputs.
std::string digest_hex(const std::string& bytes);

}  // namespace hamreduce
