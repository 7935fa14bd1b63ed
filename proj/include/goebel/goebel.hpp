#pragma once

#include "goebel/billiards.hpp"
#include "goebel/dataset.hpp"
#include "goebel/exact.hpp"
#include "goebel/modarith.hpp"
#include "goebel/parallel.hpp"
#include "goebel/reduced.hpp"
#include "goebel/sieve.hpp"
