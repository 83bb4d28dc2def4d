from kakeya.cli import main

main()
