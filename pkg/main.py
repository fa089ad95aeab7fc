from cli.app import gorhom

if __name__ == "__main__":
    gorhom()
