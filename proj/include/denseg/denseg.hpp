#pragma once

#include "denseg/bounds.hpp"
#include "denseg/brute.hpp"
#include "denseg/chain.hpp"
#include "denseg/core.hpp"
#include "denseg/io.hpp"
#include "denseg/run_length.hpp"
#include "denseg/solver.hpp"
#include "denseg/stream.hpp"
#include "denseg/window.hpp"
