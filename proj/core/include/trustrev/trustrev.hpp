#pragma once

#include "trustrev/error.hpp"
#include "trustrev/logic.hpp"
#include "trustrev/partition.hpp"
#include "trustrev/pseudometric.hpp"
#include "trustrev/revision.hpp"
#include "trustrev/scenario.hpp"
