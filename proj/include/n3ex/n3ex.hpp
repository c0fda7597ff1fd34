#pragma once

#include "n3ex/chase.hpp"
#include "n3ex/datasets.hpp"
#include "n3ex/diagnostics.hpp"
#include "n3ex/formula.hpp"
#include "n3ex/homomorphism.hpp"
#include "n3ex/instance.hpp"
#include "n3ex/n3_parser.hpp"
#include "n3ex/oracle.hpp"
#include "n3ex/pnf.hpp"
#include "n3ex/rule_parser.hpp"
#include "n3ex/rules.hpp"
#include "n3ex/symbol_table.hpp"
#include "n3ex/term.hpp"
#include "n3ex/text_format.hpp"
#include "n3ex/translate.hpp"
