from bernsum import create_cli

create_cli()(prog_name='bernsum')
