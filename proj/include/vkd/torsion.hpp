#pragma once

#include "bounds.hpp"
#include "search.hpp"
#include "tight_word.hpp"
