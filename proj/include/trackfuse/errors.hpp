#pragma once

#include <stdexcept>
#include <string>

namespace trackfuse {

// Base for all toolkit errors. Subclasses map to CLI exit codes in cli.cpp.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A homography whose determinant magnitude is at or below the singularity
// tolerance (1e-12).
class SingularHomography : public Error {
public:
  using Error::Error;
};

// Projection of a point whose homogeneous w-component vanishes; the point
// lies on the map's horizon line.
class DegenerateProjection : public Error {
public:
  using Error::Error;
};

// Innovation covariance not invertible. Cannot occur with r_scale > 0.
class SingularInnovation : public Error {
public:
  using Error::Error;
};

// Detection stream handed to the tracker with a decreasing frame index.
class UnsortedInput : public Error {
public:
  using Error::Error;
};

// Every camera excluded by the consecutive-miss threshold; a global
// occlusion. The caller carries the last fused point forward.
class NoHealthySource : public Error {
public:
  using Error::Error;
};

// Ground-truth fusion called with no points at all.
class NoSource : public Error {
public:
  using Error::Error;
};

// Two trajectories share no common frame index.
class NoOverlap : public Error {
public:
  using Error::Error;
};

// Malformed or inconsistent configuration; message names the key (and line
// where available).
class ConfigError : public Error {
public:
  using Error::Error;
};

// File-system or parse failure on an input/output file; message names the
// file (and row where available).
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace trackfuse
