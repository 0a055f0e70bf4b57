#pragma once

// Exact classification of Prym families of abelian covers of the line.

#include "prymab/conditions.hpp"
#include "prymab/cover.hpp"
#include "prymab/errors.hpp"
#include "prymab/forms.hpp"
#include "prymab/group.hpp"
#include "prymab/io.hpp"
#include "prymab/linalg.hpp"
#include "prymab/modmatrix.hpp"
#include "prymab/rational.hpp"
#include "prymab/search.hpp"
#include "prymab/table.hpp"
