import sys, os
sys.path.append(os.path.dirname(__file__))

from app import create_app

cli = create_app()

if __name__ == "__main__":
    cli(prog_name="momentos-gaussianos")
