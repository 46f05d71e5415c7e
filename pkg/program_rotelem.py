#!/usr/bin/env python3
# -*- encoding: utf-8 -*-

# Run "python3 program_rotelem.py --help" for the list of subcommands

from rotelem.cli import main


if __name__ == "__main__":
    main()
