"""
Command-line interface.
The click group is assembled here; the commands live in commands.py.
"""
import click

from bernsum.cli.commands import gf, moments, pmf, verify


def build_group(config):
    """Build the `bernsum` command group bound to a config object."""
    group = click.Group(
        name='bernsum',
        help='Exact moments, pmfs and generating functions of Bernoulli sums.',
        context_settings={'obj': config, 'help_option_names': ['-h', '--help']},
    )
    for command in (moments, pmf, gf, verify):
        group.add_command(command)
    return group
