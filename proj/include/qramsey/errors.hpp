// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <stdexcept>
#include <string>

namespace qramsey {

/// Invalid configuration or input (bad parameters, malformed model files).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A physics-level assertion failed (non-Hermitian spec, norm drift,
/// commutation violation, residual above tolerance).
class PhysicsError : public std::runtime_error {
 public:
  explicit PhysicsError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem / serialization failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qramsey
