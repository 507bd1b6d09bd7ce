#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mmbh {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two nodes that must be distinct sit at the same position.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

// A flow needs more CTAs than the superframe holds.
class InfeasibleDemandError : public Error {
 public:
  InfeasibleDemandError(int flow_id, const std::string& what)
      : Error(what), flow_id_(flow_id) {}
  int flow_id() const noexcept { return flow_id_; }

 private:
  int flow_id_;
};

// The serial TDMA allocation does not fit the superframe.
class InfeasibleScenarioError : public Error {
 public:
  InfeasibleScenarioError(std::vector<int> flow_ids, const std::string& what)
      : Error(what), flow_ids_(std::move(flow_ids)) {}
  const std::vector<int>& flow_ids() const noexcept { return flow_ids_; }

 private:
  std::vector<int> flow_ids_;
};

// A flow has zero rate at full power inside its pairing.
class StarvedFlowError : public Error {
 public:
  StarvedFlowError(int flow_id, int pairing_index, const std::string& what)
      : Error(what), flow_id_(flow_id), pairing_index_(pairing_index) {}
  int flow_id() const noexcept { return flow_id_; }
  int pairing_index() const noexcept { return pairing_index_; }

 private:
  int flow_id_;
  int pairing_index_;
};

// CTA apportioning left a pairing with zero CTAs.
class DegeneratePairingError : public Error {
 public:
  DegeneratePairingError(int pairing_index, const std::string& what)
      : Error(what), pairing_index_(pairing_index) {}
  int pairing_index() const noexcept { return pairing_index_; }

 private:
  int pairing_index_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Repeated scenario draws all failed the TDMA feasibility check.
class ScenarioGenerationError : public Error {
 public:
  ScenarioGenerationError(std::vector<int> binding_flows, const std::string& what)
      : Error(what), binding_flows_(std::move(binding_flows)) {}
  const std::vector<int>& binding_flows() const noexcept { return binding_flows_; }

 private:
  std::vector<int> binding_flows_;
};

}  // namespace mmbh
