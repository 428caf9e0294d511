#pragma once

#include "duos/database.hpp"
#include "duos/formats.hpp"
#include "duos/fraction.hpp"
#include "duos/generator.hpp"
#include "duos/miner.hpp"
#include "duos/oracle.hpp"
#include "duos/outlier.hpp"
#include "duos/rules.hpp"
#include "duos/sidset.hpp"
#include "duos/utility_table.hpp"
