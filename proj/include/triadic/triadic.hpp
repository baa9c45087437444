#pragma once

// Umbrella header.

#include <triadic/bigint.hpp>
#include <triadic/rational.hpp>
#include <triadic/digit.hpp>
#include <triadic/expansion.hpp>
#include <triadic/padic.hpp>
#include <triadic/format.hpp>
#include <triadic/oracle.hpp>
#include <triadic/solver.hpp>
