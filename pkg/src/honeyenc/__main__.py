from honeyenc.cli import main

main()
