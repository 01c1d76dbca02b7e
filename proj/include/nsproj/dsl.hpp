#pragma once

// Construction-script language: parser, interpreter and report emitters.

#include "nsproj/dsl/ast.hpp"
#include "nsproj/dsl/parser.hpp"
#include "nsproj/dsl/interpreter.hpp"
#include "nsproj/dsl/emit.hpp"
