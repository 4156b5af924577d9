#pragma once

#include "qoincl/automata.hpp"
#include "qoincl/bitset.hpp"
#include "qoincl/engine.hpp"
#include "qoincl/foundations.hpp"
#include "qoincl/grammar.hpp"
#include "qoincl/io.hpp"
#include "qoincl/quasiorders.hpp"
#include "qoincl/saturation.hpp"
