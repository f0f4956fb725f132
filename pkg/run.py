from dotenv import load_dotenv

from bernsum import create_cli

# Load environment variables
load_dotenv()

# Create the command-line application
cli = create_cli()

if __name__ == '__main__':
    cli(prog_name='bernsum')
