# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""CLI commands for combined_ratings."""
import click

from .aggregation import marginal_weights
from .cli_utils import (echo_json, echo_verdict, handle_errors, output_option, parse_distribution,
                        parse_float_option, parse_roles_option, player_collection, threads_option,
                        weights_option)
from .leaderboard import compare_methods, format_matchup, matchup_report, rank_players
from .misc import getdefault, parse_config
from .profiles import RatingProfile, WeightVector
from .ratings_loader import PlayerRecord
from .roles import RoleProfile, role_display_rating, role_update
from .rules import get_rule
from .schemas import definitions
from .utils import add_params, clear_caches, format_fixed, format_float_list, get_defaults
from .verification import SamplingConfig, check_axioms, independence_matrix, verify_cycle

RULE_CHOICES = definitions.RULE_IDS


@click.group('combined-ratings', context_settings={'help_option_names': ['-h', '--help']})
@click.option('--debug/--no-debug', '-D/-N', is_flag=True, default=None,
              help='Print full exception stacktrace on errors')
@click.pass_context
def root(ctx, debug):
    """Commands for combining per-format Elo ratings."""
    debug = debug if debug is not None else parse_config().get('debug')
    ctx.obj = {'debug': debug}
    if debug:
        click.secho('DEBUG MODE ENABLED', fg='yellow')


@root.command('combine')
@click.argument('ratings', callback=parse_float_option)
@click.option('--labels', '-l', help='Comma separated format labels')
@click.option('--rule', '-r', type=click.Choice(RULE_CHOICES), default='main', help='Aggregation rule')
@click.option('--eta', type=float, default=getdefault('entropy_eta'), help='Entropy rule shift')
@click.option('--p', 'p', type=float, help='Power mean order')
@click.option('--marginal', is_flag=True, help='Also show the marginal weights of the combined rating')
@add_params(weights_option, output_option)
@handle_errors
def combine(ratings, labels, rule, eta, p, marginal, weights, output):
    """Combine one profile of ratings into a single Elo rating."""
    profile = RatingProfile.from_values(ratings, labels.split(',') if labels else None)
    weights = WeightVector.coerce(weights, len(profile))
    aggregation_rule = get_rule(rule, eta=eta if rule == 'entropy' else None, p=p if rule == 'power_mean' else None)
    rating = aggregation_rule.evaluate(profile, weights)
    marginals = marginal_weights(profile, weights) if marginal else None

    if output == 'json':
        result = {'rule': aggregation_rule.name, 'rating': rating, 'profile': profile.to_dict(),
                  'weights': weights.weights}
        if marginals:
            result['marginal_weights'] = marginals.to_dict()
        echo_json(result)
        return rating

    places = get_defaults()['display']['rating_places']
    click.echo(f'{aggregation_rule.name}: {format_fixed(rating, places)}')
    if marginals:
        click.echo('marginal weights: ' + ', '.join(f'{label}={format_fixed(w, 4)}'
                                                    for label, w in zip(marginals.labels, marginals.weights)))
    return rating


@root.command('matchup')
@click.argument('player_a')
@click.argument('player_b')
@click.option('--lottery', help='Format lottery: "uniform", "weights" or comma separated probabilities')
@player_collection(required=False)
@add_params(weights_option, output_option)
@click.pass_context
@handle_errors
def matchup_cmd(ctx, player_a, player_b, lottery, players, weights, output):
    """Compare two players (names from --ratings-file, or comma separated ratings)."""
    if players is not None:
        a, b = players[player_a], players[player_b]
    else:
        a = PlayerRecord(name='A', ratings=RatingProfile.from_values(parse_float_option(ctx, None, player_a)))
        b = PlayerRecord(name='B', ratings=RatingProfile.from_values(parse_float_option(ctx, None, player_b)))

    distribution = parse_distribution(lottery, len(a.ratings), weights)
    report = matchup_report(a, b, weights, distribution)

    if output == 'json':
        result = report.to_dict()
        result.update(name_a=a.name, name_b=b.name, rating_difference=report.rating_difference, gap=report.gap)
        echo_json(result)
    else:
        click.echo(format_matchup(report, a.name, b.name))
    return report


@root.command('rank')
@player_collection()
@add_params(weights_option, threads_option, output_option)
@handle_errors
def rank(players, weights, threads, output):
    """Rank the players of a ratings file by combined rating."""
    leaderboard = rank_players(players, weights, threads=threads)

    if output == 'json':
        echo_json(leaderboard.to_dict())
    else:
        click.echo(leaderboard.table())
    return leaderboard


@root.command('compare')
@player_collection()
@click.option('--p', '-p', 'p_list', type=float, multiple=True, help='Power mean orders (repeatable)')
@add_params(weights_option, threads_option, output_option)
@handle_errors
def compare(players, p_list, weights, threads, output):
    """Compare the arithmetic rule, power means and the combined rating per player."""
    p_list = list(p_list) or get_defaults()['display']['power_means']
    comparison = compare_methods(players, weights, p_list, threads=threads)

    if output == 'json':
        echo_json(comparison.to_dict())
    else:
        click.echo(comparison.table())
    return comparison


def _echo_report(report):
    click.secho(f'rule {report.rule}', bold=True)
    for verdict in report.verdicts():
        echo_verdict(f'  {verdict.name}', verdict.holds,
                     f'max discrepancy {verdict.discrepancy:.3g} (tolerance {verdict.tolerance:g})')
        if not verdict.holds:
            click.echo(f'    witness: {verdict.witness}')


@root.command('verify-axioms')
@click.option('--rule', '-r', type=click.Choice(('all',) + RULE_CHOICES), default='all',
              help='Rule to check; "all" checks the independence matrix')
@click.option('--eta', type=float, default=getdefault('entropy_eta'), help='Entropy rule shift')
@click.option('--p', 'p', type=float, help='Power mean order')
@click.option('--seed', type=int, default=getdefault('seed'), help='Random seed')
@click.option('--samples', '-n', type=int, default=getdefault('samples'), help='Random instances per check')
@add_params(threads_option, output_option)
@click.pass_context
@handle_errors
def verify_axioms(ctx, rule, eta, p, seed, samples, threads, output):
    """Check normalization, recursion and marginal consistency for aggregation rules."""
    sampling = SamplingConfig.default(seed=seed, samples=samples)

    if rule == 'all':
        result = independence_matrix(sampling, eta=eta, threads=threads)
        ok = result.matches
        reports = result.reports
    else:
        result = check_axioms(get_rule(rule, eta=eta if rule == 'entropy' else None,
                                       p=p if rule == 'power_mean' else None), sampling)
        ok = result.holds
        reports = [result]

    if output == 'json':
        echo_json(dict(result.to_dict(), passed=ok))
    else:
        for report in reports:
            _echo_report(report)
        if rule == 'all':
            echo_verdict('independence matrix', ok)

    if not ok:
        ctx.exit(1)
    return result


@root.command('cycle-demo')
@add_params(output_option)
@click.pass_context
@handle_errors
def cycle_demo(ctx, output):
    """Show three profiles with equal combined ratings that beat each other in a cycle."""
    report = verify_cycle()

    if output == 'json':
        echo_json(dict(report.to_dict(), holds=report.holds))
    else:
        for name, profile, rating in zip(report.names, report.profiles, report.combined_ratings):
            click.echo(f'{name} ({format_float_list(profile.ratings, 0)}): combined {format_fixed(rating, 6)}')
        for (a, b), lottery, combined in zip(report.pairs, report.lottery_probabilities,
                                             report.combined_probabilities):
            click.echo(f'P({a} beats {b}): lottery {format_fixed(lottery, 6)}, combined {format_fixed(combined, 4)}')
        echo_verdict('cycle', report.holds, f'expected {format_fixed(report.expected_probability, 6)}')

    if not report.holds:
        ctx.exit(1)
    return report


@root.command('role-update')
@click.option('--player-a', '-a', required=True, callback=parse_roles_option,
              help='Roles of A, e.g. white=2400,black=2300')
@click.option('--player-b', '-b', required=True, callback=parse_roles_option, help='Roles of B')
@click.option('--role-a', required=True, help='Role played by A')
@click.option('--role-b', required=True, help='Role played by B')
@click.option('--score', '-s', type=float, required=True, help='Score of A: 0, 0.5 or 1')
@click.option('--k-factor', '-k', type=float, default=getdefault('k_factor'), help='Update factor')
@add_params(weights_option, output_option)
@handle_errors
def role_update_cmd(player_a, player_b, role_a, role_b, score, k_factor, weights, output):
    """Apply one game result to the played role coordinates of two players."""
    a = RoleProfile.from_roles(player_a, k_factor)
    b = RoleProfile.from_roles(player_b, k_factor)
    new_a, new_b = role_update(a, b, role_a, role_b, score)
    display_a = role_display_rating(new_a, weights)
    display_b = role_display_rating(new_b, weights)

    if output == 'json':
        echo_json({'a': new_a.ratings.as_dict(), 'b': new_b.ratings.as_dict(),
                   'display_a': display_a, 'display_b': display_b, 'k_factor': new_a.k_factor})
    else:
        places = get_defaults()['display']['rating_places']
        for name, profile, display in (('A', new_a, display_a), ('B', new_b, display_b)):
            roles = ', '.join(f'{role}={format_fixed(r, places)}' for role, r in profile.ratings.as_dict().items())
            click.echo(f'{name}: {roles}  display {format_fixed(display, places)}')
    return new_a, new_b


@root.command("test")
@click.pass_context
def test_ratings(ctx):
    """Run unit tests."""
    import pytest

    clear_caches()
    ctx.exit(pytest.main(["-v"]))
