#pragma once

#include "flataff/catalog.hpp"
#include "flataff/connection.hpp"
#include "flataff/deck.hpp"
#include "flataff/example_etale.hpp"
#include "flataff/flows.hpp"
#include "flataff/infaff.hpp"
#include "flataff/json_io.hpp"
#include "flataff/lsa.hpp"
#include "flataff/parser.hpp"
