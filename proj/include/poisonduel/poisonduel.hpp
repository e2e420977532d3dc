#pragma once

#include <poisonduel/cooks.hpp>
#include <poisonduel/duel.hpp>
#include <poisonduel/equilibrium.hpp>
#include <poisonduel/io.hpp>
#include <poisonduel/linalg.hpp>
#include <poisonduel/payoff.hpp>
#include <poisonduel/physiology.hpp>
#include <poisonduel/rational.hpp>
#include <poisonduel/rng.hpp>
#include <poisonduel/tournament.hpp>
