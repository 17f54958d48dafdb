#pragma once

// Umbrella header: the full reflective/refractive/redundant variable
// toolkit — language frontend, translator, replicated storage, device
// simulation, interpreter, and the redundancy experiment harness.

#include "rrvar/assoc.hpp"
#include "rrvar/ast.hpp"
#include "rrvar/cell_store.hpp"
#include "rrvar/controller.hpp"
#include "rrvar/device.hpp"
#include "rrvar/error.hpp"
#include "rrvar/fault.hpp"
#include "rrvar/interpreter.hpp"
#include "rrvar/lexer.hpp"
#include "rrvar/parser.hpp"
#include "rrvar/printer.hpp"
#include "rrvar/redundancy.hpp"
#include "rrvar/registry.hpp"
#include "rrvar/runtime.hpp"
#include "rrvar/runtime_calls.hpp"
#include "rrvar/simulate.hpp"
#include "rrvar/token.hpp"
#include "rrvar/trace.hpp"
#include "rrvar/translator.hpp"
#include "rrvar/validate.hpp"
#include "rrvar/value.hpp"
#include "rrvar/vote.hpp"

